"""Command-line interface.

Exit codes: 0 success, 2 precondition error, 3 verification failure.
"""
from __future__ import annotations

import argparse
import logging
import math
import sys
from importlib import resources
from pathlib import Path

from . import fox, harness, su2
from .classifier import CRITERIA, Invariants, aut_probe, classify_pair, criterion_id, witness_for
from .errors import PreconditionError, VerificationError
from .words import GroupWord, PositiveWord, difference_word, prefix_counts, single_row_decomposition

EXIT_OK, EXIT_PRECONDITION, EXIT_VERIFY = 0, 2, 3


def bundled_spec(name: str) -> Path:
    return Path(str(resources.files("sliceword") / "specs" / name))


BUNDLED_SPECS = ("minus_identity.json", "cyclic4.json", "q8_and_2t.json")


class _Output:
    def __init__(self, fmt: str, out: str | None):
        self.fmt = fmt
        self.out = out

    def emit(self, payload: dict, text_lines: list[str]) -> None:
        body = harness.dumps(payload) if self.fmt == "json" else "\n".join(text_lines)
        if self.out:
            Path(self.out).write_text(body + "\n")
        else:
            print(body)


def _pair(args) -> tuple[PositiveWord, PositiveWord]:
    return PositiveWord(args.u), PositiveWord(args.v)


def _report_lines(report) -> list[str]:
    inv = report.invariants
    lines = [
        f"u = {inv.u}   v = {inv.v}   w = {inv.w}",
        f"ab = {inv.u.ab().as_list()}  delta0 = {inv.delta0}  mu = ({inv.mu_u}, {inv.mu_v})  "
        f"kappa = {inv.kappa}  active rows = {inv.rows.active_sorted}",
        f"M_w = {inv.metabelian.render()}",
    ]
    for c in report.criteria:
        mark = "FIRED" if c.fired else "-"
        extra = f"  witness trace {c.witness.to_json()['raw_trace'][0]:.3e}" if c.witness else ""
        lines.append(f"  {c.id:<15} {mark:<6} value={c.value}{extra}")
    lines.append(f"fired: {report.fired_id}   super-degenerate: {report.super_degenerate}")
    return lines


def cmd_classify(args, out: _Output) -> int:
    report = classify_pair(*_pair(args), tol=args.tol)
    if args.aut_depth is not None:
        report.aut_probe = aut_probe(report.w, args.aut_depth)
    lines = _report_lines(report)
    if args.aut_depth is not None:
        probe = report.aut_probe
        lines.append(f"aut probe (depth {args.aut_depth}): " + (f"{probe.description}, r={probe.r}, P={probe.value}" if probe else "none"))
    out.emit(report.to_json(), lines)
    return EXIT_OK


def cmd_invariants(args, out: _Output) -> int:
    u, v = _pair(args)
    inv = Invariants.compute(u, v)
    decomp = single_row_decomposition(u, v)
    payload = {
        "u": u.letters,
        "v": v.letters,
        "w": inv.w.letters,
        "ab": u.ab().as_list(),
        "prefix_counts": {"u": prefix_counts(u), "v": prefix_counts(v)},
        "rows": {"delta": list(inv.rows.delta), "alpha": list(inv.rows.alpha), "eta": list(inv.rows.eta)},
        "invariants": {
            "delta0": inv.delta0,
            "mu_u": inv.mu_u,
            "mu_v": inv.mu_v,
            "kappa": inv.kappa,
            "active_rows": inv.rows.active_sorted,
            "p_minus_one": {"even": inv.p_even, "odd": inv.p_odd},
            "interior": [inv.interior.v1, inv.interior.v2],
            "good_slope": fox.find_good_slope(inv.metabelian),
        },
        "metabelian": inv.metabelian.render(),
        "single_row": None if decomp is None else {
            "P": decomp.P.letters, "Q": decomp.Q.letters, "d": decomp.d, "epsilon": decomp.epsilon,
        },
    }
    lines = [f"{k}: {v}" for k, v in payload.items()]
    out.emit(payload, lines)
    return EXIT_OK


def cmd_metabelian(args, out: _Output) -> int:
    if len(args.words) == 1:
        w = GroupWord(args.words[0])
        M = fox.metabelian_poly(w)
        payload = {"w": w.letters, "fox_b": fox.fox_derivative_b(w).render(), "metabelian": M.render()}
    elif len(args.words) == 2:
        u, v = PositiveWord(args.words[0]), PositiveWord(args.words[1])
        w = difference_word(u, v)
        M = fox.metabelian_poly(w)
        rowwise = fox.metabelian_poly_rowwise(u, v)
        payload = {
            "u": u.letters,
            "v": v.letters,
            "w": w.letters,
            "fox_b": fox.fox_derivative_b(w).render(),
            "metabelian": M.render(),
            "rowwise": rowwise.render(),
            "routes_agree": rowwise == M,
        }
        if rowwise != M:
            out.emit(payload, [f"{k}: {v}" for k, v in payload.items()])
            return EXIT_VERIFY
    else:
        raise PreconditionError("metabelian takes U V or a single group word W")
    out.emit(payload, [f"{k}: {v}" for k, v in payload.items()])
    return EXIT_OK


def cmd_slice_trace(args, out: _Output) -> int:
    w = GroupWord(args.w)
    rows = []
    for theta in args.theta:
        for t in args.t:
            p = su2.SlicePoint(theta, args.r, t)
            rows.append({
                "theta": theta,
                "r": args.r,
                "t": t,
                "trace": su2.slice_trace(w, p),
                "deficit": su2.slice_deficit(w, p),
                "quadratic_coefficient": su2.quadratic_coefficient(w, args.r, theta),
            })
    payload = {"w": w.letters, "grid": rows}
    lines = ["theta\tt\ttrace\tdeficit\tC2"] + [
        f"{r['theta']!r}\t{r['t']!r}\t{r['trace']!r}\t{r['deficit']!r}\t{r['quadratic_coefficient']!r}" for r in rows
    ]
    out.emit(payload, lines)
    return EXIT_OK


def cmd_witness(args, out: _Output) -> int:
    u, v = _pair(args)
    if args.criterion:
        cid = criterion_id(args.criterion)
    else:
        report = classify_pair(u, v, witnesses=False)
        if report.fired_id is None:
            out.emit({"u": u.letters, "v": v.letters, "witness": None, "super_degenerate": True},
                     ["no criterion fires (super-degenerate)"])
            return EXIT_OK
        cid = report.fired_id
    witness = witness_for(cid, u, v, tol=args.tol)
    payload = {"u": u.letters, "v": v.letters, "criterion": cid, "witness": witness.to_json()}
    lines = [
        f"criterion {cid}",
        f"A = {witness.A.to_array().tolist()}",
        f"B = {witness.B.to_array().tolist()}",
        f"tr w(A,B) = {witness.trace.real!r}",
    ]
    out.emit(payload, lines)
    return EXIT_OK


def cmd_sample(args, out: _Output) -> int:
    criteria = [c for c in args.criteria.split(",") if c.strip()] if args.criteria is not None else list(
        harness.ExperimentConfig.__dataclass_fields__["criteria_subset"].default
    )
    cfg = harness.ExperimentConfig(args.na, args.nb, args.samples, args.seed, tuple(criteria))
    stats = harness.monte_carlo(cfg, workers=args.workers)
    if args.format == "json":
        body = harness.experiment_json(cfg, stats)
        if args.out:
            Path(args.out).write_text(body + "\n")
        else:
            print(body)
    else:
        out.emit({}, [
            f"samples {cfg.samples} at counts ({cfg.na},{cfg.nb}), seed {cfg.seed}",
            f"fires: {stats.fires}",
            f"first fired: {stats.first_fired}",
            f"misses: {stats.misses}",
        ] + [f"  miss #{m['index']}: {m['u']} / {m['v']} super_degenerate={m['super_degenerate']}" for m in stats.miss_examples])
    return EXIT_OK


def cmd_verify(args, out: _Output) -> int:
    report = harness.identity_suite(args.words, args.maxlen, args.seed, fault=args.fault)
    lines = [
        f"{'PASS' if c['pass'] else 'FAIL'}  {c['identity']:<20} worst residual {c['worst_residual']:.3e} over {c['checked']}"
        for c in report["identities"]
    ] + [f"warning: {w}" for w in report["warnings"]]
    out.emit(report, lines)
    return EXIT_OK if report["pass"] else EXIT_VERIFY


def cmd_obstruction(args, out: _Output) -> int:
    report = harness.obstruction_suite(seed=args.seed)
    lines = [
        f"{'PASS' if g['pass'] else 'FAIL'}  {g['group']:<5} |G|={g['order']:<4} {g['mode']:<10} "
        f"pairs={g['pairs']:<6} max |w(A,B) - I| = {g['max_distance_to_identity']:.2e}"
        for g in report["groups"]
    ]
    ic = report["integer_commutator"]
    lines.append(f"{'PASS' if ic['pass'] else 'FAIL'}  [A^2,B^2] in SL(2,Z) = {ic['matrix']}, trace {ic['trace']}")
    lines.append(f"lcm of element orders: {report['order_lcm']['lcm']}")
    out.emit(report, lines)
    return EXIT_OK if report["pass"] else EXIT_VERIFY


def cmd_collide(args, out: _Output) -> int:
    path = Path(args.spec)
    if not path.exists() and args.spec in BUNDLED_SPECS:
        path = bundled_spec(args.spec)
    homs = harness.load_homs(path)
    result = harness.collision_finder(homs)
    payload = result.to_json()
    ok = all(r <= args.tol for r in result.residuals)
    payload["pass"] = ok
    lines = [
        f"u = {result.u}  v = {result.v}  (length {result.length}, {result.words_examined} words examined)",
        f"w = {result.w}",
        f"group orders {result.group_orders}, residuals {result.residuals}",
    ]
    out.emit(payload, lines)
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="witness residual tolerance")
    common.add_argument("--out", default=argparse.SUPPRESS, help="write the report to a file")

    parser = argparse.ArgumentParser(prog="sliceword", description="Trace-zero witnesses for positive-word differences in SU(2).")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--tol", type=float, default=su2.WITNESS_TOL)
    parser.add_argument("--out", default=None)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="evaluate every criterion on a pair")
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--aut-depth", type=int, default=None, help="also run the automorphism probe")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("invariants", parents=[common], help="integer invariants of a pair")
    p.add_argument("u")
    p.add_argument("v")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("metabelian", parents=[common], help="metabelian polynomial of U V or W")
    p.add_argument("words", nargs="+")
    p.set_defaults(func=cmd_metabelian)

    p = sub.add_parser("slice-trace", parents=[common], help="trace on the slope-visible slice")
    p.add_argument("w")
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--theta", type=float, nargs="+", default=[math.pi / 2])
    p.add_argument("--t", type=float, nargs="+", default=[0.0])
    p.set_defaults(func=cmd_slice_trace)

    p = sub.add_parser("witness", parents=[common], help="explicit trace-zero pair")
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--criterion", choices=[c[0].lower() for c in CRITERIA] + list(CRITERIA), default=None)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("sample", parents=[common], help="seeded Monte Carlo over random hard pairs")
    p.add_argument("--na", type=int, default=20)
    p.add_argument("--nb", type=int, default=20)
    p.add_argument("--samples", type=int, default=5000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--criteria", default=None, help="comma-separated subset, e.g. a,b,c,d,f")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify", parents=[common], help="sweep closed forms against direct evaluation")
    p.add_argument("--words", type=int, default=50)
    p.add_argument("--maxlen", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fault", choices=harness.FAULTS, default=None, help="inject a fault (mutation check)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("obstruction", parents=[common], help="finite-subgroup law checks")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_obstruction)

    p = sub.add_parser("collide", parents=[common], help="pigeonhole collision for finite-image homomorphisms")
    p.add_argument("--spec", required=True, help=f"JSON file, or a bundled name: {', '.join(BUNDLED_SPECS)}")
    p.set_defaults(func=cmd_collide)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    out = _Output(args.format, args.out)
    try:
        return args.func(args, out)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
