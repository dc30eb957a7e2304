"""Local rules, rule algebra, and CA dynamics on cyclic configurations.

Symbols are dense integers 0..q-1.  Rule tables are flat arrays in
lexicographic order of neighborhood words, leftmost (most negative) offset
most significant; with neighborhood {-1,0,1} and q=2 this matches the
Wolfram numbering of elementary rules.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

# Refuse to materialize tables above this many entries unless overridden.
DEFAULT_TABLE_CAP = 1 << 24


class RuleError(ValueError):
    pass


class RuleParseError(RuleError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class AlphabetMismatch(RuleError):
    pass


class TableSizeExceeded(RuleError):
    pass


def _index(word, q: int) -> int:
    i = 0
    for s in word:
        i = i * q + s
    return i


def _words(q: int, m: int):
    return itertools.product(range(q), repeat=m)


@dataclass(frozen=True)
class LocalRule:
    """Finite local rule: table over words on `offsets`, one output symbol each."""

    alphabet: int
    offsets: tuple[int, ...]
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "offsets", tuple(self.offsets))
        object.__setattr__(self, "table", tuple(self.table))
        q = self.alphabet
        if q < 1:
            raise RuleError("alphabet size must be positive")
        if any(a >= b for a, b in zip(self.offsets, self.offsets[1:])):
            raise RuleError("offsets must be strictly increasing")
        if len(self.table) != q ** len(self.offsets):
            raise RuleError(
                f"table length {len(self.table)} != {q}^{len(self.offsets)}"
            )
        if any(not (0 <= s < q) for s in self.table):
            raise RuleError("table entry out of range")

    @property
    def arity(self) -> int:
        return len(self.offsets)

    @property
    def span(self) -> int:
        return self.offsets[-1] - self.offsets[0] if self.offsets else 0

    def __call__(self, word) -> int:
        return self.table[_index(word, self.alphabet)]


@dataclass(frozen=True)
class CyclicConfig:
    """Periodic configuration; offsets act modulo the period."""

    word: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        if not self.word:
            raise RuleError("period must be positive")

    @property
    def period(self) -> int:
        return len(self.word)


def identity_rule(q: int) -> LocalRule:
    return LocalRule(q, (0,), tuple(range(q)))


def eca_rule(number: int) -> LocalRule:
    """Elementary rule by Wolfram number, declared on neighborhood {-1,0,1}."""
    if not 0 <= number <= 255:
        raise RuleError(f"elementary rule number out of range: {number}")
    return LocalRule(2, (-1, 0, 1), tuple((number >> i) & 1 for i in range(8)))


def rule_number(rule: LocalRule) -> int:
    """Generalized Wolfram number: sum of table[i] * q^i."""
    q = rule.alphabet
    return sum(s * q**i for i, s in enumerate(rule.table))


def parse_rule(text: str) -> LocalRule:
    """Parse the line-oriented rule-file grammar ('#' starts a comment)."""
    q = None
    offsets = None
    table = None
    seen_lines = {}
    eca_number = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        key = tokens[0]
        if key in seen_lines or (eca_number is not None):
            raise RuleParseError(lineno, f"duplicate or conflicting directive '{key}'")
        if key == "eca":
            if q is not None or offsets is not None or table is not None:
                raise RuleParseError(lineno, "'eca' cannot be mixed with directives")
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise RuleParseError(lineno, "expected 'eca <0..255>'")
            n = int(tokens[1])
            if n > 255:
                raise RuleParseError(lineno, f"elementary rule number out of range: {n}")
            eca_number = n
        elif key == "alphabet":
            if len(tokens) != 2 or not tokens[1].isdigit() or int(tokens[1]) < 1:
                raise RuleParseError(lineno, "expected 'alphabet <q>' with q >= 1")
            q = int(tokens[1])
            seen_lines[key] = lineno
        elif key == "neighborhood":
            try:
                offsets = tuple(int(t) for t in tokens[1:])
            except ValueError:
                raise RuleParseError(lineno, "neighborhood offsets must be integers")
            if any(a >= b for a, b in zip(offsets, offsets[1:])):
                raise RuleParseError(
                    lineno, "neighborhood offsets must be strictly increasing"
                )
            seen_lines[key] = lineno
        elif key == "table":
            if not all(t.isdigit() for t in tokens[1:]):
                raise RuleParseError(lineno, "table entries must be non-negative integers")
            table = tuple(int(t) for t in tokens[1:])
            seen_lines[key] = lineno
        else:
            raise RuleParseError(lineno, f"unknown directive '{key}'")
    if eca_number is not None:
        return eca_rule(eca_number)
    for name, value in (("alphabet", q), ("neighborhood", offsets), ("table", table)):
        if value is None:
            raise RuleParseError(0, f"missing '{name}' directive")
    if len(table) != q ** len(offsets):
        raise RuleParseError(
            seen_lines["table"],
            f"table length {len(table)} != {q}^{len(offsets)} = {q ** len(offsets)}",
        )
    if any(s >= q for s in table):
        raise RuleParseError(seen_lines["table"], "table symbol out of range")
    return LocalRule(q, offsets, table)


def format_rule(rule: LocalRule) -> str:
    """Serialize a rule in the rule-file grammar."""
    return (
        f"alphabet {rule.alphabet}\n"
        f"neighborhood {' '.join(str(o) for o in rule.offsets)}\n"
        f"table {' '.join(str(s) for s in rule.table)}\n"
    )


def apply_cyclic(rule: LocalRule, config: CyclicConfig) -> CyclicConfig:
    q = rule.alphabet
    if any(not (0 <= s < q) for s in config.word):
        raise AlphabetMismatch("configuration symbol out of alphabet range")
    n = config.period
    w = config.word
    out = tuple(
        rule.table[_index((w[(i + o) % n] for o in rule.offsets), q)]
        for i in range(n)
    )
    return CyclicConfig(out)


def apply_cyclic_batch(rule: LocalRule, configs: np.ndarray) -> np.ndarray:
    """Vectorized apply_cyclic over a (m, n) array of configurations."""
    q = rule.alphabet
    m, n = configs.shape
    idx = np.zeros(m * n, dtype=np.int64).reshape(m, n)
    cols = np.arange(n)
    for o in rule.offsets:
        idx = idx * q + configs[:, (cols + o) % n]
    table = np.asarray(rule.table, dtype=configs.dtype)
    return table[idx]


def reexpress(rule: LocalRule, offsets) -> LocalRule:
    """Same global map, table declared on a superset neighborhood."""
    offsets = tuple(offsets)
    pos = {o: i for i, o in enumerate(offsets)}
    if any(o not in pos for o in rule.offsets):
        raise RuleError("reexpress target must contain the rule neighborhood")
    q = rule.alphabet
    table = tuple(
        rule.table[_index((w[pos[o]] for o in rule.offsets), q)]
        for w in _words(q, len(offsets))
    )
    return LocalRule(q, offsets, table)


def minimize_neighborhood(rule: LocalRule) -> LocalRule:
    """Drop every offset the table is independent of."""
    q = rule.alphabet
    m = rule.arity
    table = rule.table
    keep = []
    for j in range(m):
        stride = q ** (m - 1 - j)
        dependent = False
        for idx in range(len(table)):
            if (idx // stride) % q:
                continue
            v = table[idx]
            if any(table[idx + k * stride] != v for k in range(1, q)):
                dependent = True
                break
        if dependent:
            keep.append(j)
    if len(keep) == m:
        return rule
    new_offsets = tuple(rule.offsets[j] for j in keep)
    new_table = []
    for w in _words(q, len(keep)):
        full = [0] * m
        for j, s in zip(keep, w):
            full[j] = s
        new_table.append(table[_index(full, q)])
    return LocalRule(q, new_offsets, tuple(new_table))


def compose(a: LocalRule, b: LocalRule, cap: int = DEFAULT_TABLE_CAP) -> LocalRule:
    """Minimized rule of c -> a(b(c))."""
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch("compose requires a common alphabet")
    q = a.alphabet
    offsets = tuple(sorted({oa + ob for oa in a.offsets for ob in b.offsets}))
    if q ** len(offsets) > cap:
        raise TableSizeExceeded(f"composed table would exceed {cap} entries")
    pos = {o: i for i, o in enumerate(offsets)}
    table = []
    for w in _words(q, len(offsets)):
        inner = tuple(
            b.table[_index((w[pos[oa + ob]] for ob in b.offsets), q)]
            for oa in a.offsets
        )
        table.append(a.table[_index(inner, q)])
    return minimize_neighborhood(LocalRule(q, offsets, tuple(table)))


def product(a: LocalRule, b: LocalRule, cap: int = DEFAULT_TABLE_CAP) -> LocalRule:
    """Rule on the pair alphabet acting as `a` on track 0 and `b` on track 1.

    Pairs (x, y) are encoded as x * q_b + y, track 0 most significant.
    """
    qa, qb = a.alphabet, b.alphabet
    q = qa * qb
    offsets = tuple(sorted(set(a.offsets) | set(b.offsets)))
    if q ** len(offsets) > cap:
        raise TableSizeExceeded(f"product table would exceed {cap} entries")
    pos = {o: i for i, o in enumerate(offsets)}
    table = []
    for w in _words(q, len(offsets)):
        x = tuple(w[pos[o]] // qb for o in a.offsets)
        y = tuple(w[pos[o]] % qb for o in b.offsets)
        table.append(a.table[_index(x, qa)] * qb + b.table[_index(y, qb)])
    return minimize_neighborhood(LocalRule(q, offsets, tuple(table)))


def equal(a: LocalRule, b: LocalRule) -> bool:
    """True iff the two rules define the same global map."""
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch("equality requires a common alphabet")
    union = tuple(sorted(set(a.offsets) | set(b.offsets)))
    return reexpress(a, union).table == reexpress(b, union).table
