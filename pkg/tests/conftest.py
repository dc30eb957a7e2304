import itertools

import pytest

from rca import (
    CyclicConfig,
    LocalRule,
    ReversibleCA,
    apply_cyclic,
    eca_rule,
    identity_rule,
    product,
)

ECA_REVERSIBLE = (15, 51, 85, 170, 204, 240)


@pytest.fixture(scope="session")
def eca_corpus():
    return {n: ReversibleCA.from_rule(eca_rule(n)) for n in ECA_REVERSIBLE}


@pytest.fixture(scope="session")
def q3_perm():
    # radius-0 permutation CA over q=3 (a 3-cycle of the alphabet)
    return ReversibleCA.from_rule(LocalRule(3, (0,), (1, 2, 0)))


def cyclic_injective(rule: LocalRule, n: int) -> bool:
    """Brute-force injectivity of the induced map on all period-n configs."""
    q = rule.alphabet
    seen = set()
    for w in itertools.product(range(q), repeat=n):
        img = apply_cyclic(rule, CyclicConfig(w)).word
        if img in seen:
            return False
        seen.add(img)
    return True


def k_global_on_cycle(g: ReversibleCA, i: int, encoded: tuple[int, ...]) -> tuple[int, ...]:
    """Independent oracle for the reversible update on a doubled cyclic config.

    Applies the three global stages directly: forward rule on track 0,
    pair exchange at position i, inverse rule on track 0.
    """
    q = g.alphabet
    fwd2 = product(g.forward, identity_rule(q))
    inv2 = product(g.inverse, identity_rule(q))
    x = apply_cyclic(fwd2, CyclicConfig(encoded))
    word = list(x.word)
    c, d = divmod(word[i], q)
    word[i] = d * q + c
    x = apply_cyclic(inv2, CyclicConfig(tuple(word)))
    return x.word
