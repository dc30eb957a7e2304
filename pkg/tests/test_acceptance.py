"""Acceptance suite: one criterion per test, one pass/fail line each.

Run with `pytest tests/test_acceptance.py -s` to see the per-criterion lines.
"""

import itertools

import numpy as np
import pytest

from rca import (
    BlockCircuit,
    CyclicConfig,
    FinitePermutation,
    TrackedCell,
    apply_circuit,
    apply_circuit_batch,
    assemble_circuit,
    block_neighborhood,
    bn_upper_bound,
    compose,
    eca_rule,
    enumerate_configs,
    equal,
    identity_rule,
    invert,
    is_localized,
    is_ltsca,
    localization,
    product,
    reversible_update,
    shrink,
    square_block_info,
    time_symmetrize,
    verify_block_representation,
    verify_circuit,
    window_span,
    ebr_of_square,
)

from conftest import cyclic_injective

C = TrackedCell


def report(number, name, ok):
    print(f"ACCEPTANCE {number} ({name}): {'PASS' if ok else 'FAIL'}")
    assert ok


def test_criterion_1_reversible_eca_census():
    from rca import is_injective

    decided = {n for n in range(256) if is_injective(eca_rule(n))}
    brute = {
        n
        for n in range(256)
        if all(cyclic_injective(eca_rule(n), k) for k in range(1, 9))
    }
    ok = decided == {15, 51, 85, 170, 204, 240} and decided == brute
    report(1, "reversible-ECA census", ok)


def test_criterion_2_loc_shape_and_bound(eca_corpus):
    expected_bn = {204: (0,), 51: (0,), 170: (1,), 240: (-1,)}
    ok = True
    for n, g in eca_corpus.items():
        bn = block_neighborhood(g)
        loc = localization(reversible_update(g, 0))
        ok &= loc == frozenset({C(0, p) for p in bn} | {C(1, 0)})
        ok &= set(bn) <= set(bn_upper_bound(g))
        if n in expected_bn:
            ok &= bn == expected_bn[n]
    report(2, "Loc(K_0) shape and BN values", ok)


def test_criterion_3_block_representation(eca_corpus, q3_perm):
    ok = True
    for g in list(eca_corpus.values()) + [q3_perm]:
        k = shrink(reversible_update(g, 0))
        for n in range(window_span(k) + 1, 7):
            rep = verify_block_representation(g, n, mode="exhaustive")
            ok &= rep.mismatches == 0
    report(3, "two-layer circuit equals G x G^-1", ok)


def test_criterion_4_commutation(eca_corpus, q3_perm):
    n = 6
    ok = True
    for g in list(eca_corpus.values()) + [q3_perm]:
        q = g.alphabet
        k = shrink(reversible_update(g, 0))
        configs = enumerate_configs(q * q, n)
        for i, j in itertools.combinations(range(n), 2):
            ij = BlockCircuit(n, (((i, k),), ((j, k),)), (q, q))
            ji = BlockCircuit(n, (((j, k),), ((i, k),)), (q, q))
            ok &= np.array_equal(
                apply_circuit_batch(ij, configs), apply_circuit_batch(ji, configs)
            )
    report(4, "reversible updates commute", ok)


def test_criterion_5_localization_correctness():
    import random

    rng = random.Random(2024)
    windows = [
        (C(0, 0),),
        (C(0, 0), C(0, 1)),
        (C(0, 0), C(1, 0)),
        (C(0, -1), C(0, 0), C(0, 1)),
        (C(0, 0), C(0, 1), C(1, 1)),
    ]

    def random_perm():
        window = rng.choice(windows)
        size = 2 ** len(window)
        table = list(range(size))
        rng.shuffle(table)
        return FinitePermutation(window, (2, 2), tuple(table))

    ok = True
    for _ in range(200):
        f = random_perm()
        greedy = localization(f)
        best = None
        for k in range(len(f.window) + 1):
            for sub in itertools.combinations(f.window, k):
                if is_localized(f, sub):
                    best = frozenset(sub)
                    break
            if best is not None:
                break
        ok &= greedy == best
    for _ in range(200):
        f = random_perm()
        cells = list(f.window)
        y = frozenset(c for c in cells if rng.random() < 0.6)
        z = frozenset(c for c in cells if rng.random() < 0.6)
        if is_localized(f, y) and is_localized(f, z):
            ok &= is_localized(f, y & z)
    report(5, "greedy localization and intersection closure", ok)


def test_criterion_6_ebr_of_squares(eca_corpus):
    ok = True
    for f in eca_corpus.values():
        g, h = time_symmetrize(f)
        ok &= is_ltsca(g, h)
        _, rep = ebr_of_square(g, h, 6, mode="exhaustive")
        ok &= rep.tested == 4096 and rep.mismatches == 0
        ok &= square_block_info(g, h).contained
    circuit, rep = ebr_of_square(eca_corpus[51], (0, 1), 4)
    ok &= rep.mismatches == 0
    for word in itertools.product(range(2), repeat=4):
        ok &= apply_circuit(circuit, CyclicConfig(word)).word == word
    report(6, "EBR of LTSCA squares", ok)


def test_criterion_7_mutation_sensitivity(eca_corpus):
    g = eca_corpus[170]
    circuit = assemble_circuit(g, 6)
    k = circuit.layers[0][0][1]
    table = list(k.table)
    table[0], table[1] = table[1], table[0]
    bad_k = FinitePermutation(k.window, k.alphabets, tuple(table))
    bad = BlockCircuit(
        circuit.period,
        (tuple((a, bad_k) for a, _ in circuit.layers[0]), circuit.layers[1]),
        circuit.alphabets,
    )
    rep = verify_circuit(bad, product(g.forward, g.inverse), mode="exhaustive")
    report(7, "verifier detects a corrupted block table", rep.mismatches > 0)


def test_criterion_8_inverse_synthesis(eca_corpus):
    ok = equal(invert(eca_rule(170)), eca_rule(240))
    for g in eca_corpus.values():
        ok &= equal(compose(g.forward, g.inverse), identity_rule(2))
        ok &= equal(invert(invert(g.forward)), g.forward)
    report(8, "inverse synthesis", ok)
