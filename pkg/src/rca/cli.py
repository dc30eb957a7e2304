"""Command-line surface: rule ingestion, analysis, circuit dumps, verification.

Exit codes: 0 when the queried property holds, 1 when it fails or a
counterexample is found, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import report as report_mod
from .core import (
    LocalRule,
    RuleError,
    eca_rule,
    format_rule,
    parse_rule,
)
from .reversibility import (
    NotInjective,
    RadiusCapExceeded,
    ReversibleCA,
    invert,
    is_injective,
    neighborhoods,
    power,
)
from .localization import format_permutation, localization, restrict
from .blockrep import (
    assemble_circuit,
    block_neighborhood,
    bn_upper_bound,
    format_circuit,
    reversible_update,
    verify_block_representation,
)
from .timesym import (
    NotLTSCA,
    ebr_of_square,
    find_time_symmetries,
    is_involution,
    is_ltsca,
    square_block_info,
    time_symmetrize,
)

MAX_CENSUS_RULES = 100_000


class CliError(Exception):
    pass


def load_rule(spec: str) -> LocalRule:
    if spec.startswith("eca:"):
        try:
            number = int(spec[4:])
            return eca_rule(number)
        except (ValueError, RuleError) as exc:
            raise CliError(f"bad rule argument '{spec}': {exc}")
    try:
        with open(spec) as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read rule file '{spec}': {exc}")
    try:
        return parse_rule(text)
    except RuleError as exc:
        raise CliError(f"{spec}: {exc}")


def load_reversible(spec: str, radius_cap: int = 8) -> ReversibleCA:
    rule = load_rule(spec)
    try:
        return ReversibleCA.from_rule(rule, radius_cap)
    except NotInjective:
        raise CliError(f"rule '{spec}' is not injective")
    except RadiusCapExceeded as exc:
        raise CliError(f"rule '{spec}': {exc}")


def parse_involution(text: str) -> tuple[int, ...]:
    try:
        perm = tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError:
        raise CliError(f"bad involution '{text}': entries must be integers")
    try:
        if not is_involution(perm):
            raise CliError(f"'{text}' is a permutation but not an involution")
    except ValueError as exc:
        raise CliError(f"bad involution '{text}': {exc}")
    return perm


def offsets_str(offsets) -> str:
    return "{" + " ".join(str(o) for o in offsets) + "}"


def emit(args, payload: dict, lines: list[str]) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in lines:
            print(line)


def write_dump(args, text: str) -> None:
    path = getattr(args, "dump", None)
    if path:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_check(args) -> int:
    rule = load_rule(args.rule)
    if not is_injective(rule):
        emit(args, {"injective": False}, ["not injective"])
        return 1
    g = ReversibleCA.from_rule(rule, args.radius_cap)
    rep = neighborhoods(g)
    payload = {
        "injective": True,
        "neighborhood": list(rep.n_fwd),
        "inverse_neighborhood": list(rep.n_inv),
        "transposed_inverse_neighborhood": list(rep.n_tilde),
        "inverse_table": list(g.inverse.table),
        "inverse_offsets": list(g.inverse.offsets),
    }
    lines = [
        "injective",
        f"N = {offsets_str(rep.n_fwd)}",
        f"N_inv = {offsets_str(rep.n_inv)}",
        f"N_tilde = {offsets_str(rep.n_tilde)}",
        "inverse:",
        format_rule(g.inverse).rstrip("\n"),
    ]
    emit(args, payload, lines)
    write_dump(args, format_rule(g.inverse))
    return 0


def cmd_invert(args) -> int:
    rule = load_rule(args.rule)
    try:
        inv = invert(rule, args.radius_cap)
    except NotInjective:
        emit(args, {"injective": False}, ["not injective"])
        return 1
    text = format_rule(inv)
    emit(
        args,
        {
            "alphabet": inv.alphabet,
            "offsets": list(inv.offsets),
            "table": list(inv.table),
        },
        [text.rstrip("\n")],
    )
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    return 0


def cmd_bn(args) -> int:
    g = load_reversible(args.rule, args.radius_cap)
    if args.power > 1:
        g = power(g, args.power)
    bn = block_neighborhood(g)
    bound = bn_upper_bound(g)
    slack = tuple(sorted(set(bound) - set(bn)))
    payload = {"bn": list(bn), "bound": list(bound), "slack": list(slack)}
    emit(
        args,
        payload,
        [f"BN = {offsets_str(bn)}; bound = {offsets_str(bound)}; slack = {offsets_str(slack)}"],
    )
    return 0


def cmd_blocks(args) -> int:
    g = load_reversible(args.rule, args.radius_cap)
    k0 = reversible_update(g, 0)
    loc = localization(k0)
    k = restrict(k0, loc)
    dump = format_permutation(k)
    payload = {
        "window": [str(c) for c in k0.window],
        "localization": sorted(str(c) for c in loc),
        "dump": dump,
    }
    lines = [
        "K_0 window: " + " ".join(str(c) for c in k0.window),
        "Loc(K_0): " + " ".join(str(c) for c in sorted(loc)),
        dump.rstrip("\n"),
    ]
    emit(args, payload, lines)
    write_dump(args, dump)
    return 0


def _verify_common(args, run):
    mode = "exhaustive" if args.exhaustive else "auto"
    rep = run(mode)
    payload = {
        "mode": rep.mode,
        "tested": rep.tested,
        "mismatches": rep.mismatches,
        "first_counterexample": rep.first_counterexample,
    }
    lines = [f"{rep.tested - rep.mismatches}/{rep.tested} match ({rep.mode})"]
    if rep.first_counterexample:
        lines.append(f"first counterexample: {rep.first_counterexample}")
    return payload, lines, (0 if rep.ok else 1)


def cmd_verify(args) -> int:
    g = load_reversible(args.rule, args.radius_cap)
    payload, lines, status = _verify_common(
        args,
        lambda mode: verify_block_representation(
            g, args.period, mode=mode, samples=args.samples, seed=args.seed
        ),
    )
    circuit = assemble_circuit(g, args.period)
    emit(args, payload, lines)
    write_dump(args, format_circuit(circuit))
    return status


def cmd_ts_check(args) -> int:
    g = load_reversible(args.rule, args.radius_cap)
    h = parse_involution(args.involution)
    if len(h) != g.alphabet:
        raise CliError("involution length does not match the rule alphabet")
    ok = is_ltsca(g, h)
    emit(
        args,
        {"ltsca": ok, "involution": list(h)},
        ["locally time-symmetric" if ok else "not locally time-symmetric"],
    )
    return 0 if ok else 1


def cmd_ts_find(args) -> int:
    g = load_reversible(args.rule, args.radius_cap)
    found = find_time_symmetries(g)
    payload = {"involutions": [list(h) for h in found]}
    lines = (
        [" ".join(str(x) for x in h) for h in found]
        if found
        else ["no radius-0 time symmetry"]
    )
    emit(args, payload, lines)
    return 0 if found else 1


def cmd_ebr2(args) -> int:
    g = load_reversible(args.rule, args.radius_cap)
    h = parse_involution(args.involution)
    if len(h) != g.alphabet:
        raise CliError("involution length does not match the rule alphabet")
    try:
        circuit, rep = ebr_of_square(
            g,
            h,
            args.period,
            mode="exhaustive" if args.exhaustive else "auto",
            samples=args.samples,
            seed=args.seed,
        )
    except NotLTSCA as exc:
        raise CliError(str(exc))
    info = square_block_info(g, h)
    payload = {
        "mode": rep.mode,
        "tested": rep.tested,
        "mismatches": rep.mismatches,
        "first_counterexample": rep.first_counterexample,
        "block_positions": list(info.block_positions),
        "bn": list(info.block_neighborhood),
        "loc_within_bn": info.contained,
    }
    lines = [
        f"{rep.tested - rep.mismatches}/{rep.tested} match ({rep.mode})",
        f"Loc(L_0) = {offsets_str(info.block_positions)}; "
        f"BN = {offsets_str(info.block_neighborhood)}; "
        + ("containment holds" if info.contained else "CONTAINMENT VIOLATED"),
    ]
    emit(args, payload, lines)
    write_dump(args, format_circuit(circuit))
    return 0 if rep.ok else 1


def cmd_symmetrize(args) -> int:
    f = load_reversible(args.rule, args.radius_cap)
    g, h = time_symmetrize(f)
    text = format_rule(g.forward)
    payload = {
        "alphabet": g.alphabet,
        "offsets": list(g.forward.offsets),
        "table": list(g.forward.table),
        "involution": list(h),
    }
    lines = [text.rstrip("\n"), "involution " + " ".join(str(x) for x in h)]
    emit(args, payload, lines)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    return 0


def cmd_census(args) -> int:
    q, r = args.alphabet, args.radius
    if q < 2:
        raise CliError("census requires alphabet >= 2")
    width = 2 * r + 1
    count = q ** (q**width)
    if count > MAX_CENSUS_RULES:
        raise CliError(
            f"census of {count} rules exceeds the cap of {MAX_CENSUS_RULES}"
        )
    offsets = tuple(range(-r, r + 1))
    rows = []
    for number in range(count):
        table = []
        rest = number
        for _ in range(q**width):
            table.append(rest % q)
            rest //= q
        rule = LocalRule(q, offsets, tuple(table))
        if not is_injective(rule):
            continue
        g = ReversibleCA.from_rule(rule, args.radius_cap)
        bn = block_neighborhood(g)
        bound = bn_upper_bound(g)
        rows.append(
            {
                "rule": number,
                "neighborhood": list(g.forward.offsets),
                "inverse_neighborhood": list(g.inverse.offsets),
                "bn": list(bn),
                "bound": list(bound),
                "slack": sorted(set(bound) - set(bn)),
            }
        )
    payload = {"alphabet": q, "radius": r, "reversible": rows}
    lines = [f"{len(rows)} reversible rules among {count}"]
    for row in rows:
        lines.append(
            f"rule {row['rule']}: BN = {offsets_str(row['bn'])}; "
            f"bound = {offsets_str(row['bound'])}; slack = {offsets_str(row['slack'])}"
        )
    if args.report_dir:
        csv_path, fig_path = report_mod.write_census_report(rows, args.report_dir)
        payload["csv"] = csv_path
        payload["figure"] = fig_path
        lines.append(f"wrote {csv_path} and {fig_path}")
    emit(args, payload, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rca",
        description="Reversible 1D cellular automata: block circuits and time symmetry.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=func)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--radius-cap", type=int, default=8, help=argparse.SUPPRESS)
        return p

    def add_rule_arg(p):
        p.add_argument("rule", help="rule file path or inline 'eca:<n>'")

    def add_verify_args(p):
        p.add_argument("--period", type=int, required=True)
        p.add_argument("--exhaustive", action="store_true")
        p.add_argument("--samples", type=int, default=100_000)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--dump", help="write the circuit dump to this path")

    p = add("check", cmd_check, help="injectivity, inverse, neighborhoods")
    add_rule_arg(p)
    p.add_argument("--dump", help="write the inverse rule to this path")

    p = add("invert", cmd_invert, help="synthesize the inverse rule")
    add_rule_arg(p)
    p.add_argument("-o", "--output", help="write the inverse rule file here")

    p = add("bn", cmd_bn, help="block neighborhood, bound, and slack")
    add_rule_arg(p)
    p.add_argument("--power", type=int, default=1, help="analyze G^k instead of G")

    p = add("blocks", cmd_blocks, help="dump the reversible-update block table")
    add_rule_arg(p)
    p.add_argument("--dump", help="write the permutation dump to this path")

    p = add("verify", cmd_verify, help="differential check: circuit vs. G x G^-1")
    add_rule_arg(p)
    add_verify_args(p)

    p = add("ts-check", cmd_ts_check, help="test local time symmetry for one involution")
    add_rule_arg(p)
    p.add_argument("--involution", required=True, help="permutation of 0..q-1")

    p = add("ts-find", cmd_ts_find, help="enumerate all radius-0 time symmetries")
    add_rule_arg(p)

    p = add("ebr2", cmd_ebr2, help="exact block representation of G^2, verified")
    add_rule_arg(p)
    p.add_argument("--involution", required=True, help="permutation of 0..q-1")
    add_verify_args(p)

    p = add("symmetrize", cmd_symmetrize, help="standard time-symmetrization F x F^-1")
    add_rule_arg(p)
    p.add_argument("-o", "--output", help="write the symmetrized rule file here")

    p = add("census", cmd_census, help="enumerate rules, report reversible ones")
    p.add_argument("--alphabet", type=int, required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--report-dir", help="write census.csv and a summary figure here")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
