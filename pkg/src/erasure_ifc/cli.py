"""Command line front end: analyze, simulate, examples, sweep.

Exit codes: 0 on success, 1 on input or usage errors, 2 when the built-in
regression assertions fail.  Rational quantities are printed as exact "a/b"
strings with a decimal rendering alongside; the exact form is authoritative.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import analysis, instances, model, simulator
from .analysis import Regime, RegimeReport, RateBounds, LemmaRow, LemmaTable
from .model import MacDistribution
from .simulator import Scheme, SchemeSpec


def _rat_json(x: Fraction) -> dict:
    return {"exact": str(Fraction(x)), "decimal": float(x)}


def _rat_from_json(d: dict) -> Fraction:
    return Fraction(d["exact"])


def _rat_text(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x)
    return f"{x} (~{float(x):.6g})"


def rate_bounds_to_dict(b: RateBounds) -> dict:
    return {
        "r1_max": _rat_json(b.r1_max),
        "r2_max": _rat_json(b.r2_max),
        "sum_max": _rat_json(b.sum_max),
    }


def rate_bounds_from_dict(d: dict) -> RateBounds:
    return RateBounds(
        r1_max=_rat_from_json(d["r1_max"]),
        r2_max=_rat_from_json(d["r2_max"]),
        sum_max=_rat_from_json(d["sum_max"]),
    )


def regime_report_to_dict(r: RegimeReport) -> dict:
    return {
        "satisfied": sorted(reg.value for reg in r.satisfied),
        "chosen": r.chosen_regime.value if r.chosen_regime else None,
        "sum_capacity": _rat_json(r.sum_capacity) if r.sum_capacity is not None else None,
        "lower": _rat_json(r.lower),
        "upper": _rat_json(r.upper),
        "scheme_hint": r.scheme_hint,
    }


def regime_report_from_dict(d: dict) -> RegimeReport:
    return RegimeReport(
        satisfied=frozenset(Regime(v) for v in d["satisfied"]),
        sum_capacity=_rat_from_json(d["sum_capacity"]) if d["sum_capacity"] else None,
        lower=_rat_from_json(d["lower"]),
        upper=_rat_from_json(d["upper"]),
        chosen_regime=Regime(d["chosen"]) if d["chosen"] else None,
        scheme_hint=d["scheme_hint"],
    )


def lemma_table_to_dict(t: LemmaTable) -> dict:
    return {
        "holds": t.holds,
        "rows": [
            {"n": r.n, "e_a1": _rat_json(r.e_a1), "e_a2": _rat_json(r.e_a2), "holds": r.holds}
            for r in t.rows
        ],
    }


def lemma_table_from_dict(d: dict) -> LemmaTable:
    return LemmaTable(
        rows=tuple(
            LemmaRow(
                n=r["n"],
                e_a1=_rat_from_json(r["e_a1"]),
                e_a2=_rat_from_json(r["e_a2"]),
                holds=r["holds"],
            )
            for r in d["rows"]
        )
    )


def analysis_report(dist) -> dict:
    """Full machine-readable analysis of one instance."""
    if isinstance(dist, MacDistribution):
        links = {"1": 1, "2": 2}
        report = {
            "kind": "mac",
            "q": dist.q,
            "marginals": {},
            "expected_levels": {},
            "region": rate_bounds_to_dict(analysis.mac_region(dist)),
            "corners": {
                "decode_user1_first": [_rat_json(r) for r in analysis.mac_corner(dist, 1)],
                "decode_user2_first": [_rat_json(r) for r in analysis.mac_corner(dist, 2)],
            },
        }
    else:
        links = {"11": 11, "21": 21, "22": 22}
        best_levels, best_total = analysis.best_private_split(dist)
        report = {
            "kind": "ifc",
            "q": dist.q,
            "marginals": {},
            "expected_levels": {},
            "outer_bound": rate_bounds_to_dict(analysis.outer_bound(dist)),
            "regimes": regime_report_to_dict(analysis.classify(dist)),
            "interference_set": sorted(analysis.interference_set_I1(dist)),
            "mixed_achievable": _rat_json(analysis.mixed_achievable(dist)),
            "lemma": lemma_table_to_dict(analysis.lemma_condition(dist)),
            "private_split": {
                "levels": sorted(best_levels),
                "total": _rat_json(best_total),
            },
        }
    for name, link in links.items():
        pmf = model.marginal(dist, link)
        report["marginals"][name] = {str(n): str(p) for n, p in pmf.mass}
        report["expected_levels"][name] = _rat_json(model.expected_level(pmf))
    return report


def _print_text_report(report: dict, out) -> None:
    print(f"kind: {report['kind']}   q: {report['q']}", file=out)
    for name in sorted(report["marginals"]):
        pmf = ", ".join(f"{n}: {p}" for n, p in sorted(report["marginals"][name].items()))
        exp = _rat_text(Fraction(report["expected_levels"][name]["exact"]))
        print(f"link {name}: E[N] = {exp}   pmf {{{pmf}}}", file=out)
    bounds_key = "region" if report["kind"] == "mac" else "outer_bound"
    b = report[bounds_key]
    print(
        f"{bounds_key}: R1 <= {_rat_text(Fraction(b['r1_max']['exact']))}, "
        f"R2 <= {_rat_text(Fraction(b['r2_max']['exact']))}, "
        f"R1+R2 <= {_rat_text(Fraction(b['sum_max']['exact']))}",
        file=out,
    )
    if report["kind"] == "mac":
        c1 = report["corners"]["decode_user1_first"]
        c2 = report["corners"]["decode_user2_first"]
        print(
            f"corner (decode user 1 first): ({_rat_text(Fraction(c1[0]['exact']))}, "
            f"{_rat_text(Fraction(c1[1]['exact']))})",
            file=out,
        )
        print(
            f"corner (decode user 2 first): ({_rat_text(Fraction(c2[0]['exact']))}, "
            f"{_rat_text(Fraction(c2[1]['exact']))})",
            file=out,
        )
        return
    reg = report["regimes"]
    print(f"regimes satisfied: {', '.join(reg['satisfied']) or 'none'}", file=out)
    if reg["sum_capacity"] is not None:
        print(
            f"sum capacity: {_rat_text(Fraction(reg['sum_capacity']['exact']))} "
            f"(regime {reg['chosen']}, scheme {reg['scheme_hint']})",
            file=out,
        )
    else:
        print(
            f"sum capacity bracket: [{_rat_text(Fraction(reg['lower']['exact']))}, "
            f"{_rat_text(Fraction(reg['upper']['exact']))}] (scheme {reg['scheme_hint']})",
            file=out,
        )
    print(f"favorable user-1 levels: {report['interference_set']}", file=out)
    print(f"interference-avoiding sum rate: "
          f"{_rat_text(Fraction(report['mixed_achievable']['exact']))}", file=out)
    lemma = report["lemma"]
    print(f"simplification condition holds: {lemma['holds']}", file=out)
    for row in lemma["rows"]:
        print(
            f"  level {row['n']}: E[A1] = {row['e_a1']['exact']}, "
            f"E[A2] = {row['e_a2']['exact']}, holds: {row['holds']}",
            file=out,
        )
    ps = report["private_split"]
    print(
        f"best private split: levels {ps['levels']} "
        f"-> total {_rat_text(Fraction(ps['total']['exact']))}",
        file=out,
    )


# ---------------------------------------------------------------------------
# simulate / sweep

PER_TRIAL_COLUMNS = [
    "trial", "scheme", "T", "epsilon", "ok1", "ok2",
    "rate1", "rate2", "clean_slots_rx1", "clean_slots_rx2",
]
SUMMARY_COLUMNS = [
    "scheme", "epsilon", "T", "trials",
    "success1", "success2", "mean_rate1", "mean_rate2",
]


def _slot_totals(result) -> tuple:
    d = result.diagnostics
    rx1 = sum(d["rx1_user1"].values())
    rx2_src = d["rx2_user1"] if d["rx2_user1"] is not None else d["rx2_user2"]
    return rx1, sum(rx2_src.values())


def _scheme_label(spec: SchemeSpec) -> str:
    if spec.scheme is Scheme.PRIVATE_SPLIT:
        levels = ",".join(str(p) for p in sorted(spec.private_levels))
        return f"private-split[{levels}]+{spec.inner.value}"
    return spec.scheme.value


def write_trial_csv(summary, out) -> None:
    """Per-trial rows followed by a one-row summary section."""
    spec = summary.spec
    w = csv.writer(out, lineterminator="\n")
    w.writerow(PER_TRIAL_COLUMNS)
    for i, r in enumerate(summary.results):
        rx1, rx2 = _slot_totals(r)
        w.writerow([
            i, _scheme_label(spec), spec.block_length, str(spec.epsilon),
            int(r.ok_user1), int(r.ok_user2), float(r.rate1), float(r.rate2), rx1, rx2,
        ])
    w.writerow([])
    w.writerow(SUMMARY_COLUMNS)
    w.writerow(summary_row(summary))


def summary_row(summary) -> list:
    spec = summary.spec
    return [
        _scheme_label(spec), str(spec.epsilon), spec.block_length, summary.trials,
        float(summary.success1), float(summary.success2),
        float(summary.mean_rate1), float(summary.mean_rate2),
    ]


# ---------------------------------------------------------------------------
# built-in regression

@dataclass(frozen=True)
class Check:
    name: str
    expected: str
    computed: str
    ok: bool


@dataclass(frozen=True)
class ExampleFixtures:
    """The reference instances the regression runs against (overridable in tests)."""

    mac: object = instances.mac_two_state
    ergodic_very_strong: object = None
    mixed_tight: object = None
    private_split: object = None

    def resolve(self):
        return (
            self.mac,
            self.ergodic_very_strong or instances.ifc_ergodic_very_strong(),
            self.mixed_tight or instances.ifc_mixed_tight(),
            self.private_split or instances.ifc_private_split(),
        )


def _check_eq(name: str, expected, computed) -> Check:
    return Check(name, str(expected), str(computed), expected == computed)


def _check_ge(name: str, threshold, computed) -> Check:
    return Check(name, f">= {threshold}", str(computed), computed >= threshold)


def example_checks(fixtures: Optional[ExampleFixtures] = None,
                   epsilon="0.1", block_length: int = 2000, trials: int = 20,
                   seed: int = 2024) -> list:
    """Exact and simulated assertions over the built-in instances."""
    mac_factory, evs, mixed, split = (fixtures or ExampleFixtures()).resolve()
    checks = []

    for p in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
        corner = analysis.mac_corner(mac_factory(p))
        checks.append(_check_eq(f"mac corner at p={p}", (p, 4 - p), corner))
    checks.append(
        _check_eq("mac sum bound", Fraction(4), analysis.mac_region(mac_factory(Fraction(1, 2))).sum_max)
    )

    evs_report = analysis.classify(evs)
    checks.append(
        Check(
            "ergodic-very-strong regime",
            "ErgodicVeryStrong satisfied",
            ", ".join(sorted(r.value for r in evs_report.satisfied)) or "none",
            Regime.ERGODIC_VERY_STRONG in evs_report.satisfied,
        )
    )
    checks.append(_check_eq("ergodic-very-strong sum capacity", Fraction(4), evs_report.sum_capacity))

    checks.append(
        Check("mixed-tight simplification", "holds", str(analysis.lemma_condition(mixed).holds),
              analysis.lemma_condition(mixed).holds)
    )
    checks.append(_check_eq("mixed-tight achievable", Fraction(7, 2), analysis.mixed_achievable(mixed)))
    mixed_report = analysis.classify(mixed)
    checks.append(_check_eq("mixed-tight sum capacity", Fraction(7, 2), mixed_report.sum_capacity))
    checks.append(_check_eq("mixed-tight outer bound", Fraction(7, 2), analysis.outer_bound(mixed).sum_max))

    checks.append(_check_eq("private-split achievable", Fraction(5, 2), analysis.mixed_achievable(split)))
    checks.append(_check_eq("private-split outer bound", Fraction(3), analysis.outer_bound(split).sum_max))
    best_levels, best_total = analysis.best_private_split(split)
    checks.append(_check_eq("private-split levels", frozenset({2}), best_levels))
    checks.append(_check_eq("private-split total", Fraction(3), best_total))

    sims = [
        ("mac corner", mac_factory(Fraction(1, 2)),
         SchemeSpec(Scheme.MAC_CORNER, epsilon, block_length), Fraction(4)),
        ("ergodic-vs", evs, SchemeSpec(Scheme.ERGODIC_VS, epsilon, block_length), Fraction(4)),
        ("mixed", mixed, SchemeSpec(Scheme.MIXED, epsilon, block_length), Fraction(7, 2)),
        ("private-split", split,
         SchemeSpec(Scheme.PRIVATE_SPLIT, epsilon, block_length,
                    private_levels=frozenset({2}), inner=Scheme.STRONG_JOINT), Fraction(3)),
    ]
    for name, dist, spec, capacity in sims:
        summary = simulator.monte_carlo(dist, spec, trials, seed)
        checks.append(_check_ge(f"simulate {name}: user-1 success", Fraction(19, 20), summary.success1))
        checks.append(_check_ge(f"simulate {name}: user-2 success", Fraction(19, 20), summary.success2))
        checks.append(
            _check_ge(
                f"simulate {name}: sum rate vs capacity {capacity}",
                Fraction(88, 100) * capacity,
                summary.mean_rate1 + summary.mean_rate2,
            )
        )
    return checks


# ---------------------------------------------------------------------------
# argument parsing and entry point

class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's default 2
        self.print_usage(sys.stderr)
        raise SystemExit(1) from None


def _build_parser() -> _Parser:
    parser = _Parser(prog="erasure-ifc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="exact analysis of an instance file")
    p_an.add_argument("instance")
    p_an.add_argument("--format", choices=("text", "json"), default="text")

    p_sim = sub.add_parser("simulate", help="Monte Carlo simulation of one scheme")
    p_sim.add_argument("instance")
    p_sim.add_argument("--scheme", required=True, choices=[s.value for s in Scheme])
    p_sim.add_argument("--T", type=int, default=2000, dest="block_length")
    p_sim.add_argument("--trials", type=int, default=20)
    p_sim.add_argument("--epsilon", default="0.1")
    p_sim.add_argument("--seed", type=int, default=2024)
    p_sim.add_argument("--private-levels", default="",
                       help="comma-separated user-1 levels (private-split only)")
    p_sim.add_argument("--inner", choices=[s.value for s in Scheme], default=None,
                       help="inner scheme (private-split only)")
    p_sim.add_argument("--out", default="-", help="CSV output path, '-' for stdout")

    p_ex = sub.add_parser("examples", help="run the built-in regression instances")
    p_ex.add_argument("--T", type=int, default=2000, dest="block_length")
    p_ex.add_argument("--trials", type=int, default=20)
    p_ex.add_argument("--epsilon", default="0.1")
    p_ex.add_argument("--seed", type=int, default=2024)

    p_sw = sub.add_parser("sweep", help="sweep epsilon or T, one summary row per value")
    p_sw.add_argument("instance")
    p_sw.add_argument("--scheme", required=True, choices=[s.value for s in Scheme])
    p_sw.add_argument("--vary", required=True, choices=("epsilon", "T"))
    p_sw.add_argument("--values", required=True,
                      help="comma-separated values of the varied parameter")
    p_sw.add_argument("--T", type=int, default=2000, dest="block_length")
    p_sw.add_argument("--trials", type=int, default=20)
    p_sw.add_argument("--epsilon", default="0.1")
    p_sw.add_argument("--seed", type=int, default=2024)
    p_sw.add_argument("--private-levels", default="")
    p_sw.add_argument("--inner", choices=[s.value for s in Scheme], default=None)
    p_sw.add_argument("--out", default="-")

    return parser


def _load_instance(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return model.parse_instance(fh.read())
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from exc
    except ValueError as exc:
        raise _UsageError(f"{path}: {exc}") from exc


class _UsageError(Exception):
    pass


def _spec_from_args(args) -> SchemeSpec:
    private = frozenset(
        int(tok) for tok in args.private_levels.split(",") if tok.strip()
    ) if args.private_levels else frozenset()
    return SchemeSpec(
        scheme=args.scheme,
        epsilon=args.epsilon,
        block_length=args.block_length,
        private_levels=private,
        inner=args.inner,
    )


def _open_out(path: str):
    if path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _cmd_analyze(args) -> int:
    dist = _load_instance(args.instance)
    report = analysis_report(dist)
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        _print_text_report(report, sys.stdout)
    return 0


def _cmd_simulate(args) -> int:
    dist = _load_instance(args.instance)
    if args.trials < 1:
        raise _UsageError("--trials must be at least 1")
    spec = _spec_from_args(args)
    summary = simulator.monte_carlo(dist, spec, args.trials, args.seed)
    out, close = _open_out(args.out)
    try:
        write_trial_csv(summary, out)
    finally:
        if close:
            out.close()
    return 0


def _cmd_examples(args) -> int:
    checks = example_checks(
        epsilon=args.epsilon, block_length=args.block_length,
        trials=args.trials, seed=args.seed,
    )
    failed = 0
    for c in checks:
        status = "ok" if c.ok else "FAIL"
        print(f"[{status}] {c.name}: expected {c.expected}, computed {c.computed}")
        failed += not c.ok
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return 2 if failed else 0


def _cmd_sweep(args) -> int:
    dist = _load_instance(args.instance)
    if args.trials < 1:
        raise _UsageError("--trials must be at least 1")
    values = [tok.strip() for tok in args.values.split(",") if tok.strip()]
    if not values:
        raise _UsageError("--values must list at least one value")
    out, close = _open_out(args.out)
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["vary", "value"] + SUMMARY_COLUMNS)
        for value in values:
            if args.vary == "T":
                args_block = int(value)
                spec = SchemeSpec(
                    scheme=args.scheme, epsilon=args.epsilon, block_length=args_block,
                    private_levels=_spec_from_args(args).private_levels, inner=args.inner,
                )
            else:
                spec = SchemeSpec(
                    scheme=args.scheme, epsilon=value, block_length=args.block_length,
                    private_levels=_spec_from_args(args).private_levels, inner=args.inner,
                )
            summary = simulator.monte_carlo(dist, spec, args.trials, args.seed)
            w.writerow(["T" if args.vary == "T" else "epsilon", value] + summary_row(summary))
    finally:
        if close:
            out.close()
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "analyze": _cmd_analyze,
        "simulate": _cmd_simulate,
        "examples": _cmd_examples,
        "sweep": _cmd_sweep,
    }
    try:
        return handlers[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
