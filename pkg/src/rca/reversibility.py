"""Injectivity decision for 1D CA and inverse-rule synthesis.

The injectivity authority is the pair de Bruijn graph: the global map on
bi-infinite configurations is non-injective iff the agreement subgraph
contains an unequal pair node lying on a bi-infinite path.  Injective 1D CA
on the full shift are bijective, so this also decides reversibility.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from collections import deque

from .core import (
    LocalRule,
    RuleError,
    compose,
    equal,
    identity_rule,
    minimize_neighborhood,
    reexpress,
    _index,
)

DEFAULT_RADIUS_CAP = 8


class NotInjective(RuleError):
    pass


class RadiusCapExceeded(RuleError):
    def __init__(self, cap: int):
        super().__init__(f"no inverse found up to radius {cap}")
        self.cap = cap


def _contiguous(rule: LocalRule) -> LocalRule:
    lo, hi = rule.offsets[0], rule.offsets[-1]
    return reexpress(rule, range(lo, hi + 1))


def _infinite_path_nodes(num_nodes: int, successors) -> list[bool]:
    """Nodes admitting an infinite forward path (peel out-degree-0 nodes)."""
    out_deg = [0] * num_nodes
    preds = [[] for _ in range(num_nodes)]
    for u in range(num_nodes):
        for v in successors[u]:
            out_deg[u] += 1
            preds[v].append(u)
    alive = [True] * num_nodes
    queue = deque(u for u in range(num_nodes) if out_deg[u] == 0)
    while queue:
        u = queue.popleft()
        if not alive[u]:
            continue
        alive[u] = False
        for p in preds[u]:
            out_deg[p] -= 1
            if out_deg[p] == 0 and alive[p]:
                queue.append(p)
    return alive


def is_injective(rule: LocalRule) -> bool:
    rule = minimize_neighborhood(rule)
    q = rule.alphabet
    if q == 1:
        return True
    if not rule.offsets:
        return False  # constant on q >= 2
    rule = _contiguous(rule)
    sp = rule.span
    if sp == 0:
        return sorted(rule.table) == list(range(q))
    size = q**sp
    table = rule.table

    def node(u, v):
        return u * size + v

    successors = [[] for _ in range(size * size)]
    rsuccessors = [[] for _ in range(size * size)]
    for u in range(size):
        for v in range(size):
            for a in range(q):
                out_u = table[u * q + a]
                un = (u * q + a) % size
                for b in range(q):
                    if table[v * q + b] != out_u:
                        continue
                    vn = (v * q + b) % size
                    successors[node(u, v)].append(node(un, vn))
                    rsuccessors[node(un, vn)].append(node(u, v))
    fwd = _infinite_path_nodes(size * size, successors)
    bwd = _infinite_path_nodes(size * size, rsuccessors)
    for u in range(size):
        for v in range(size):
            if u != v and fwd[node(u, v)] and bwd[node(u, v)]:
                return False
    return True


def invert(rule: LocalRule, radius_cap: int = DEFAULT_RADIUS_CAP) -> LocalRule:
    """Minimized inverse rule, searched by increasing candidate radius.

    At radius s the candidate table is filled from all image windows of
    length 2s+1 and, when consistent, verified via composition to identity.
    """
    rmin = minimize_neighborhood(rule)
    q = rmin.alphabet
    if not is_injective(rmin):
        raise NotInjective("rule is not injective")
    if not rmin.offsets:
        # only reachable for q == 1
        return identity_rule(1)
    cont = _contiguous(rmin)
    lo = cont.offsets[0]
    sp = cont.span
    m = sp + 1
    ident = identity_rule(q)
    for s in range(radius_cap + 1):
        center = s - lo
        xlen = sp + 2 * s + 1
        if center < 0 or center >= xlen:
            continue
        mapping = {}
        consistent = True
        for x in itertools.product(range(q), repeat=xlen):
            y = tuple(
                cont.table[_index(x[j : j + m], q)] for j in range(2 * s + 1)
            )
            c0 = x[center]
            if mapping.setdefault(y, c0) != c0:
                consistent = False
                break
        if not consistent or len(mapping) != q ** (2 * s + 1):
            continue
        table = tuple(
            mapping[y] for y in itertools.product(range(q), repeat=2 * s + 1)
        )
        candidate = minimize_neighborhood(
            LocalRule(q, tuple(range(-s, s + 1)), table)
        )
        if equal(compose(rmin, candidate), ident) and equal(
            compose(candidate, rmin), ident
        ):
            return candidate
    raise RadiusCapExceeded(radius_cap)


@dataclass(frozen=True)
class ReversibleCA:
    """A minimized local rule paired with its verified minimized inverse."""

    forward: LocalRule
    inverse: LocalRule

    def __post_init__(self):
        if self.forward.alphabet != self.inverse.alphabet:
            raise RuleError("forward and inverse alphabets differ")
        ident = identity_rule(self.forward.alphabet)
        if not equal(compose(self.forward, self.inverse), ident):
            raise RuleError("forward o inverse is not the identity")
        if not equal(compose(self.inverse, self.forward), ident):
            raise RuleError("inverse o forward is not the identity")

    @property
    def alphabet(self) -> int:
        return self.forward.alphabet

    @classmethod
    def from_rule(cls, rule: LocalRule, radius_cap: int = DEFAULT_RADIUS_CAP):
        fwd = minimize_neighborhood(rule)
        return cls(fwd, invert(fwd, radius_cap))

    @classmethod
    def from_pair(cls, forward: LocalRule, inverse: LocalRule):
        return cls(minimize_neighborhood(forward), minimize_neighborhood(inverse))


@dataclass(frozen=True)
class NeighborhoodReport:
    n_fwd: tuple[int, ...]
    n_inv: tuple[int, ...]
    n_tilde: tuple[int, ...]


def neighborhoods(g: ReversibleCA) -> NeighborhoodReport:
    """Minimized forward and inverse neighborhoods plus the transposed inverse."""
    return NeighborhoodReport(
        n_fwd=g.forward.offsets,
        n_inv=g.inverse.offsets,
        n_tilde=tuple(sorted(-o for o in g.inverse.offsets)),
    )


def power(g: ReversibleCA, k: int) -> ReversibleCA:
    """G^k as a verified reversible CA (k >= 1)."""
    if k < 1:
        raise RuleError("power requires k >= 1")
    fwd, inv = g.forward, g.inverse
    for _ in range(k - 1):
        fwd = compose(g.forward, fwd)
        inv = compose(g.inverse, inv)
    return ReversibleCA.from_pair(fwd, inv)
