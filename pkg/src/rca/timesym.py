"""Involutions, local time symmetry, conjugation of blocks, and the exact
block representation of the square of a locally time-symmetric automaton.

A reversible automaton is locally time-symmetric when some involution of
the alphabet, applied cellwise, conjugates it to its inverse.  Its square
then equals one layer of conjugated single-cell involutions followed by
one layer of the involution itself, with no alphabet extension.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import LocalRule, RuleError, compose, equal, product, _index
from .localization import (
    FinitePermutation,
    TrackedCell,
    localization,
    restrict,
    window_span,
)
from .reversibility import ReversibleCA
from .blockrep import (
    BlockCircuit,
    DEFAULT_SAMPLES,
    DEFAULT_VERIFY_BUDGET,
    NonIdentityOutsideWindow,
    PaddingDependence,
    PeriodTooSmall,
    VerificationReport,
    block_neighborhood,
    bn_upper_bound,
    verify_circuit,
)

MAX_ENUM_ALPHABET = 8


class NotLTSCA(RuleError):
    pass


def is_involution(table) -> bool:
    table = tuple(table)
    if sorted(table) != list(range(len(table))):
        raise ValueError("not a permutation")
    return all(table[table[x]] == x for x in range(len(table)))


def involutions(q: int):
    """All involutions of 0..q-1 (fixed points and disjoint transpositions)."""

    def build(rest):
        if not rest:
            yield {}
            return
        x = rest[0]
        for sub in build(rest[1:]):
            yield {x: x, **sub}
        for k, y in enumerate(rest[1:], start=1):
            for sub in build(rest[1:k] + rest[k + 1 :]):
                yield {x: y, y: x, **sub}

    for mapping in build(tuple(range(q))):
        yield tuple(mapping[x] for x in range(q))


def involution_rule(h) -> LocalRule:
    h = tuple(h)
    if not is_involution(h):
        raise ValueError("table is not an involution")
    return LocalRule(len(h), (0,), h)


def pair_swap(q: int) -> tuple[int, ...]:
    """The involution (x, y) -> (y, x) on the pair alphabet of size q*q."""
    return tuple(y * q + x for x in range(q) for y in range(q))


def is_ltsca(g: ReversibleCA, h) -> bool:
    """True iff the cellwise involution conjugates G to its inverse."""
    h = tuple(h)
    if len(h) != g.alphabet:
        raise RuleError("involution is not over the automaton alphabet")
    H = involution_rule(h)
    return equal(g.inverse, compose(H, compose(g.forward, H)))


def find_time_symmetries(g: ReversibleCA) -> list[tuple[int, ...]]:
    """All radius-0 involutions witnessing local time symmetry."""
    if g.alphabet > MAX_ENUM_ALPHABET:
        raise RuleError(
            f"alphabet too large for involution enumeration (cap {MAX_ENUM_ALPHABET})"
        )
    return [h for h in involutions(g.alphabet) if is_ltsca(g, h)]


def time_symmetrize(f: ReversibleCA) -> tuple[ReversibleCA, tuple[int, ...]]:
    """The standard time-symmetrization F x F^-1 with the pair-swap involution."""
    g = ReversibleCA.from_pair(
        product(f.forward, f.inverse), product(f.inverse, f.forward)
    )
    h = pair_swap(f.alphabet)
    assert is_ltsca(g, h)
    return g, h


def conjugate_block(
    f: ReversibleCA,
    b: FinitePermutation,
    acting_tracks: tuple[int, ...] = (0,),
) -> FinitePermutation:
    """The permutation f^-1 o b o f (f applied first) on the acted tracks.

    Tabulated on Loc(b) dilated by the block-neighborhood upper bound of f
    (plus the origin) on the acting tracks, then shrunk to its localization.
    The shrunk localization must stay inside Loc(b) dilated by BN(f) and
    the origin; a violation signals a bug.
    """
    q = f.alphabet
    fwd, inv = f.forward, f.inverse
    for c in b.window:
        if c.track in acting_tracks and b.alphabets[c.track] != q:
            raise RuleError("acted track alphabet does not match the automaton")
    locb = localization(b)
    br = restrict(b, locb)
    bound = tuple(sorted(set(bn_upper_bound(f)) | {0}))
    cells = set()
    for c in locb:
        if c.track in acting_tracks:
            cells.update(TrackedCell(c.track, c.position + o) for o in bound)
        else:
            cells.add(c)
    window = tuple(sorted(cells))
    if not window:
        return FinitePermutation((), b.alphabets, (0,))
    pad_span = _offsets_span(fwd.offsets) + _offsets_span(inv.offsets)
    acting_positions = {
        t: [c.position for c in window if c.track == t]
        for t in acting_tracks
        if any(c.track == t for c in window)
    }
    br_index = {c: k for k, c in enumerate(br.window)}
    pads = sorted({0, q - 1})
    tables = []
    for pad in pads:
        table = []
        for word in itertools.product(
            *(range(b.alphabets[c.track]) for c in window)
        ):
            vals = dict(zip(window, word))

            def cin(t, p):
                return vals.get(TrackedCell(t, p), pad)

            cache: dict[tuple[int, int], int] = {}

            def e(t, p):
                if t not in acting_tracks:
                    return cin(t, p)
                if (t, p) not in cache:
                    cache[(t, p)] = fwd.table[
                        _index((cin(t, p + o) for o in fwd.offsets), q)
                    ]
                return cache[(t, p)]

            b_out = br.apply(tuple(e(c.track, c.position) for c in br.window))

            def mid(t, p):
                k = br_index.get(TrackedCell(t, p))
                return b_out[k] if k is not None else e(t, p)

            def out(t, p):
                if t not in acting_tracks:
                    return mid(t, p)
                return inv.table[_index((mid(t, p + o) for o in inv.offsets), q)]

            for t, positions in acting_positions.items():
                for p in range(min(positions) - pad_span, max(positions) + pad_span + 1):
                    if TrackedCell(t, p) not in vals and out(t, p) != pad:
                        raise NonIdentityOutsideWindow(
                            f"conjugate acts outside its window at cell {t}:{p}"
                        )
            outword = tuple(out(c.track, c.position) for c in window)
            idx = 0
            for s, base in zip(outword, (b.alphabets[c.track] for c in window)):
                idx = idx * base + s
            table.append(idx)
        tables.append(tuple(table))
    if len(tables) == 2 and tables[0] != tables[1]:
        raise PaddingDependence("conjugated block table depends on the padding symbol")
    full = FinitePermutation(window, b.alphabets, tables[0])
    shrunk = restrict(full, localization(full))
    bn = tuple(sorted(set(block_neighborhood(f)) | {0}))
    allowed = set()
    for c in locb:
        if c.track in acting_tracks:
            allowed.update(TrackedCell(c.track, c.position + o) for o in bn)
        else:
            allowed.add(c)
    if not set(shrunk.window) <= allowed:
        raise RuleError(
            "conjugated block localization escapes Loc(b) dilated by BN(f)"
        )
    return shrunk


def _offsets_span(offsets) -> int:
    return offsets[-1] - offsets[0] if offsets else 0


@dataclass(frozen=True)
class SquareBlockInfo:
    """Localization of the conjugated involution block vs. the block neighborhood."""

    block_positions: tuple[int, ...]
    block_neighborhood: tuple[int, ...]

    @property
    def contained(self) -> bool:
        return set(self.block_positions) <= set(self.block_neighborhood)


def square_block_info(g: ReversibleCA, h) -> SquareBlockInfo:
    b0 = FinitePermutation((TrackedCell(0, 0),), (g.alphabet,), tuple(h))
    l0 = conjugate_block(g, b0)
    return SquareBlockInfo(
        tuple(sorted(c.position for c in l0.window)), block_neighborhood(g)
    )


def ebr_of_square(
    g: ReversibleCA,
    h,
    n: int,
    mode: str = "auto",
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    budget: int = DEFAULT_VERIFY_BUDGET,
) -> tuple[BlockCircuit, VerificationReport]:
    """Exact two-layer circuit for G^2 on the original alphabet, verified.

    Layer 1 places the conjugated involution block at every anchor; layer 2
    applies the involution at every cell.
    """
    h = tuple(h)
    q = g.alphabet
    if not is_ltsca(g, h):
        raise NotLTSCA("the involution does not conjugate G to its inverse")
    b0 = FinitePermutation((TrackedCell(0, 0),), (q,), h)
    l0 = conjugate_block(g, b0)
    if n < window_span(l0) + 1:
        raise PeriodTooSmall(
            f"period {n} < block span {window_span(l0)} + 1; windows would self-overlap"
        )
    hcell = FinitePermutation((TrackedCell(0, 0),), (q,), h)
    layer_l = tuple((a, l0) for a in range(n))
    layer_h = tuple((a, hcell) for a in range(n))
    circuit = BlockCircuit(n, (layer_l, layer_h), (q,), "ltsca-square")
    square = compose(g.forward, g.forward)
    report = verify_circuit(circuit, square, mode, samples, seed, budget)
    return circuit, report
