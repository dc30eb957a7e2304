"""Finite permutations over tracked cells and their localization.

A bijection on words over a finite window is localized on a subset when it
acts as the identity outside it and its action inside depends only on the
inside.  Localized sets are closed under intersection, so a unique minimal
one exists; greedy removal in canonical window order finds it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True, order=True)
class TrackedCell:
    track: int
    position: int

    def __str__(self):
        return f"{self.track}:{self.position}"


@dataclass(frozen=True)
class FinitePermutation:
    """Bijection on words over a window of tracked cells.

    `alphabets[t]` is the symbol range of every cell on track t.  Word
    indices are lexicographic with the first window cell most significant.
    """

    window: tuple[TrackedCell, ...]
    alphabets: tuple[int, ...]
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "window", tuple(self.window))
        object.__setattr__(self, "alphabets", tuple(self.alphabets))
        object.__setattr__(self, "table", tuple(self.table))
        if list(self.window) != sorted(set(self.window)):
            raise ValueError("window must be canonically sorted and duplicate-free")
        if any(c.track >= len(self.alphabets) or c.track < 0 for c in self.window):
            raise ValueError("window cell track has no alphabet")
        if any(q < 1 for q in self.alphabets):
            raise ValueError("alphabet sizes must be positive")
        if len(self.table) != self.size:
            raise ValueError("table length does not match window size")
        if sorted(self.table) != list(range(self.size)):
            raise ValueError("table is not a permutation")

    @property
    def bases(self) -> tuple[int, ...]:
        return tuple(self.alphabets[c.track] for c in self.window)

    @property
    def size(self) -> int:
        return math.prod(self.bases)

    def encode(self, word) -> int:
        i = 0
        for s, b in zip(word, self.bases):
            i = i * b + s
        return i

    def decode(self, index: int) -> tuple[int, ...]:
        out = []
        for b in reversed(self.bases):
            out.append(index % b)
            index //= b
        return tuple(reversed(out))

    def apply(self, word) -> tuple[int, ...]:
        return self.decode(self.table[self.encode(word)])

    def words(self):
        return itertools.product(*(range(b) for b in self.bases))

    @classmethod
    def identity(cls, window, alphabets) -> "FinitePermutation":
        window = tuple(sorted(window))
        size = math.prod(alphabets[c.track] for c in window)
        return cls(window, tuple(alphabets), tuple(range(size)))

    @classmethod
    def swap(cls, position: int, q: int) -> "FinitePermutation":
        """Exchange of the two tracks at one position."""
        window = (TrackedCell(0, position), TrackedCell(1, position))
        table = tuple(b * q + a for a in range(q) for b in range(q))
        return cls(window, (q, q), table)

    @classmethod
    def single_cell(cls, cell: TrackedCell, perm, alphabets) -> "FinitePermutation":
        return cls((cell,), tuple(alphabets), tuple(perm))


def window_span(f: FinitePermutation) -> int:
    if not f.window:
        return 0
    positions = [c.position for c in f.window]
    return max(positions) - min(positions)


def is_localized(f: FinitePermutation, cells) -> bool:
    """True iff f is identity outside `cells` and self-contained inside."""
    y = frozenset(cells)
    win = set(f.window)
    if not y <= win:
        raise ValueError("localization candidate is not contained in the window")
    inside = [k for k, c in enumerate(f.window) if c in y]
    outside = [k for k, c in enumerate(f.window) if c not in y]
    seen: dict[tuple, tuple] = {}
    for w in f.words():
        out = f.apply(w)
        if any(out[k] != w[k] for k in outside):
            return False
        key = tuple(w[k] for k in inside)
        val = tuple(out[k] for k in inside)
        if seen.setdefault(key, val) != val:
            return False
    return True


def localization(f: FinitePermutation, reverse_scan: bool = False) -> frozenset[TrackedCell]:
    """Loc(f): the unique minimal localized cell set.

    Greedy removal is exact because localized sets are intersection-closed;
    the scan order is canonical (reversible for testing order-independence).
    """
    current = set(f.window)
    order = reversed(f.window) if reverse_scan else f.window
    for c in order:
        if is_localized(f, current - {c}):
            current.discard(c)
    return frozenset(current)


def restrict(f: FinitePermutation, cells) -> FinitePermutation:
    """The factor of f on `cells` whose product with identity reconstructs f."""
    y = frozenset(cells)
    if not is_localized(f, y):
        raise ValueError("f is not localized on the given cells")
    sub = tuple(sorted(y))
    idx = {c: k for k, c in enumerate(f.window)}
    table = []
    for w in itertools.product(*(range(f.alphabets[c.track]) for c in sub)):
        full = [0] * len(f.window)
        for c, s in zip(sub, w):
            full[idx[c]] = s
        out = f.apply(full)
        i = 0
        for c in sub:
            i = i * f.alphabets[c.track] + out[idx[c]]
        table.append(i)
    return FinitePermutation(sub, f.alphabets, tuple(table))


def shrink(f: FinitePermutation) -> FinitePermutation:
    return restrict(f, localization(f))


def format_permutation(f: FinitePermutation) -> str:
    """Dump: header of `t:p` cells, then one `inword -> outword` line each."""
    if max(f.alphabets, default=2) > len(_DIGITS):
        raise ValueError("dump format supports alphabets up to 36 symbols")
    lines = ["cells " + " ".join(str(c) for c in f.window)]
    for w in f.words():
        out = f.apply(w)
        lines.append(
            "".join(_DIGITS[s] for s in w) + " -> " + "".join(_DIGITS[s] for s in out)
        )
    return "\n".join(lines) + "\n"
