"""Reversible updates, the Block Neighborhood, and verified block circuits.

The reversible update at cell i swaps the freshly computed output symbol
onto an auxiliary track and undoes the rest: apply the forward rule on
track 0, exchange tracks at position i, apply the inverse rule on track 0.
Despite the global definition it is a finite permutation, and placing one
copy per cell followed by a layer of track swaps reproduces the product of
the automaton with its inverse on the doubled alphabet.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import CyclicConfig, LocalRule, RuleError, apply_cyclic_batch, product, _index
from .localization import (
    FinitePermutation,
    TrackedCell,
    format_permutation,
    localization,
    restrict,
    window_span,
)
from .reversibility import ReversibleCA


class PaddingDependence(RuleError):
    pass


class NonIdentityOutsideWindow(RuleError):
    pass


class ShapeViolation(RuleError):
    pass


class PeriodTooSmall(RuleError):
    pass


DEFAULT_VERIFY_BUDGET = 1 << 20
DEFAULT_SAMPLES = 100_000


def _span(offsets) -> int:
    return offsets[-1] - offsets[0] if offsets else 0


def bn_upper_bound(g: ReversibleCA) -> tuple[int, ...]:
    """The offset set (N - N + Nt) intersect (Nt - Nt + N), Nt = -N_inverse."""
    n = g.forward.offsets
    nt = tuple(sorted(-o for o in g.inverse.offsets))
    if not n or not nt:
        return (0,)
    left = {a - b + c for a in n for b in n for c in nt}
    right = {a - b + c for a in nt for b in nt for c in n}
    return tuple(sorted(left & right))


def reversible_update(g: ReversibleCA, i: int) -> FinitePermutation:
    """Tabulate K_i on {0} x (i + bound) plus the auxiliary cell (1, i).

    Tabulation pads track 0 outside the window, with two distinct padding
    symbols; padding dependence or non-identity action outside the window
    signals a bug, never a legitimate outcome.
    """
    q = g.alphabet
    fwd, inv = g.forward, g.inverse
    bound = bn_upper_bound(g)
    track0 = tuple(i + o for o in bound)
    aux = TrackedCell(1, i)
    window = tuple(sorted([TrackedCell(0, p) for p in track0] + [aux]))
    pad_span = _span(fwd.offsets) + _span(inv.offsets)
    lo = min(track0 + (i,)) - pad_span
    hi = max(track0 + (i,)) + pad_span
    track0_set = set(track0)
    pads = sorted({0, q - 1})
    tables = []
    for pad in pads:
        table = []
        for word in itertools.product(range(q), repeat=len(window)):
            vals = dict(zip(window, word))
            d_i = vals[aux]

            def c0(p):
                return vals.get(TrackedCell(0, p), pad)

            cache: dict[int, int] = {}

            def e(p):
                if p not in cache:
                    cache[p] = fwd.table[
                        _index((c0(p + o) for o in fwd.offsets), q)
                    ]
                return cache[p]

            def e2(p):
                return d_i if p == i else e(p)

            def out0(p):
                return inv.table[_index((e2(p + o) for o in inv.offsets), q)]

            for p in range(lo, hi + 1):
                if p not in track0_set and out0(p) != pad:
                    raise NonIdentityOutsideWindow(
                        f"K_{i} acts outside its window at track-0 position {p}"
                    )
            out = tuple(
                out0(c.position) if c.track == 0 else e(i) for c in window
            )
            idx = 0
            for s in out:
                idx = idx * q + s
            table.append(idx)
        tables.append(tuple(table))
    if len(tables) == 2 and tables[0] != tables[1]:
        raise PaddingDependence(f"K_{i} table depends on the padding symbol")
    return FinitePermutation(window, (q, q), tables[0])


def block_neighborhood(g: ReversibleCA) -> tuple[int, ...]:
    """BN: the track-0 positions of Loc(K_0)."""
    if g.alphabet == 1:
        return (0,)
    loc = localization(reversible_update(g, 0))
    track1 = {c for c in loc if c.track == 1}
    if track1 != {TrackedCell(1, 0)}:
        raise ShapeViolation(
            f"Loc(K_0) track-1 part is {sorted(track1)}, expected {{1:0}}"
        )
    return tuple(sorted(c.position for c in loc if c.track == 0))


@dataclass(frozen=True)
class BlockCircuit:
    """Ordered layers of anchored finite permutations on a cyclic cell array.

    Config symbols encode the per-track cell contents big-endian in track
    order; an anchor shifts every window position of its permutation.
    """

    period: int
    layers: tuple[tuple[tuple[int, FinitePermutation], ...], ...]
    alphabets: tuple[int, ...]
    metadata: str = ""

    @property
    def cell_alphabet(self) -> int:
        return math.prod(self.alphabets)


def _strides(alphabets) -> tuple[int, ...]:
    strides = []
    acc = 1
    for q in reversed(alphabets):
        strides.append(acc)
        acc *= q
    return tuple(reversed(strides))


def _apply_placement(state: list[int], anchor: int, perm: FinitePermutation, alphabets, n: int):
    strides = _strides(alphabets)
    spots = [
        (c.track, (c.position + anchor) % n, strides[c.track], alphabets[c.track])
        for c in perm.window
    ]
    word = tuple((state[p] // st) % q for _, p, st, q in spots)
    out = perm.apply(word)
    for (t, p, st, q), old, new in zip(spots, word, out):
        state[p] += (new - old) * st


def apply_circuit(
    circuit: BlockCircuit,
    config: CyclicConfig,
    check_order_seed: Optional[int] = None,
) -> CyclicConfig:
    """Apply each layer in order; placements within a layer commute.

    With `check_order_seed` set, each layer is also applied in one random
    placement order and the results are asserted equal.
    """
    if config.period != circuit.period:
        raise RuleError("configuration period does not match the circuit")
    qcell = circuit.cell_alphabet
    if any(not (0 <= s < qcell) for s in config.word):
        raise RuleError("configuration symbol out of alphabet range")
    state = list(config.word)
    rng = random.Random(check_order_seed) if check_order_seed is not None else None
    for layer in circuit.layers:
        before = list(state)
        for anchor, perm in layer:
            _apply_placement(state, anchor, perm, circuit.alphabets, circuit.period)
        if rng is not None:
            alt = before
            for anchor, perm in rng.sample(list(layer), len(layer)):
                _apply_placement(alt, anchor, perm, circuit.alphabets, circuit.period)
            assert alt == state, "placement order changed the layer result"
    return CyclicConfig(tuple(state))


def apply_circuit_batch(circuit: BlockCircuit, configs: np.ndarray) -> np.ndarray:
    """Vectorized apply_circuit over a (m, n) array of encoded configs."""
    n = circuit.period
    state = configs.astype(np.int64, copy=True)
    strides = _strides(circuit.alphabets)
    for layer in circuit.layers:
        for anchor, perm in layer:
            if not perm.window:
                continue
            bases = perm.bases
            spots = [
                (
                    (c.position + anchor) % n,
                    strides[c.track],
                    circuit.alphabets[c.track],
                )
                for c in perm.window
            ]
            idx = np.zeros(len(state), dtype=np.int64)
            digits = []
            for (p, st, q), b in zip(spots, bases):
                d = (state[:, p] // st) % q
                digits.append(d)
                idx = idx * b + d
            out = np.asarray(perm.table, dtype=np.int64)[idx]
            new_digits = []
            for b in reversed(bases):
                new_digits.append(out % b)
                out //= b
            new_digits.reverse()
            for (p, st, _), old, new in zip(spots, digits, new_digits):
                state[:, p] += (new - old) * st
    return state


def assemble_circuit(g: ReversibleCA, n: int) -> BlockCircuit:
    """Two layers: the shrunk reversible update at every anchor, then swaps."""
    q = g.alphabet
    k0 = reversible_update(g, 0)
    k = restrict(k0, localization(k0))
    if n < window_span(k) + 1:
        raise PeriodTooSmall(
            f"period {n} < block span {window_span(k)} + 1; windows would self-overlap"
        )
    swap = FinitePermutation.swap(0, q)
    layer_k = tuple((a, k) for a in range(n))
    layer_swap = tuple((a, swap) for a in range(n))
    return BlockCircuit(n, (layer_k, layer_swap), (q, q), "standard")


@dataclass(frozen=True)
class VerificationReport:
    mode: str
    tested: int
    mismatches: int
    first_counterexample: Optional[tuple] = None

    @property
    def ok(self) -> bool:
        return self.mismatches == 0


def enumerate_configs(q: int, n: int) -> np.ndarray:
    total = q**n
    base = np.arange(total, dtype=np.int64)
    cols = [(base // q ** (n - 1 - j)) % q for j in range(n)]
    return np.stack(cols, axis=1)


def verify_circuit(
    circuit: BlockCircuit,
    rule: LocalRule,
    mode: str = "auto",
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    budget: int = DEFAULT_VERIFY_BUDGET,
) -> VerificationReport:
    """Differential run of a circuit against a local rule's cyclic dynamics."""
    qcell = circuit.cell_alphabet
    if rule.alphabet != qcell:
        raise RuleError("rule alphabet does not match the circuit cell alphabet")
    n = circuit.period
    total = qcell**n
    if mode not in ("auto", "exhaustive", "sampled"):
        raise ValueError(f"unknown verification mode {mode!r}")
    if mode == "exhaustive" or (mode == "auto" and total <= budget):
        configs = enumerate_configs(qcell, n)
        mode_used = "exhaustive"
    else:
        rng = np.random.default_rng(seed)
        configs = rng.integers(0, qcell, size=(samples, n), dtype=np.int64)
        mode_used = "sampled"
    expected = apply_cyclic_batch(rule, configs)
    got = apply_circuit_batch(circuit, configs)
    bad = np.any(expected != got, axis=1)
    mismatches = int(bad.sum())
    first = None
    if mismatches:
        r = int(np.argmax(bad))
        first = (
            tuple(int(s) for s in configs[r]),
            tuple(int(s) for s in expected[r]),
            tuple(int(s) for s in got[r]),
        )
    return VerificationReport(mode_used, len(configs), mismatches, first)


def verify_block_representation(
    g: ReversibleCA,
    n: int,
    mode: str = "auto",
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    budget: int = DEFAULT_VERIFY_BUDGET,
) -> VerificationReport:
    """Compare the standard circuit against the doubled map G x G^-1."""
    circuit = assemble_circuit(g, n)
    doubled = product(g.forward, g.inverse)
    return verify_circuit(circuit, doubled, mode, samples, seed, budget)


def format_circuit(circuit: BlockCircuit) -> str:
    lines = [f"period {circuit.period}", f"layers {len(circuit.layers)}"]
    for li, layer in enumerate(circuit.layers):
        lines.append(f"layer {li}")
        for anchor, perm in layer:
            lines.append(f"anchor {anchor}")
            lines.append(format_permutation(perm).rstrip("\n"))
    return "\n".join(lines) + "\n"
