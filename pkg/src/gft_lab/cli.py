"""gft-lab command line.

Exit status: 0 on success, 1 when a verification fails, 2 for invalid
configuration. All randomness derives from --seed.
"""

from __future__ import annotations

import argparse
import os
import sys
import traceback
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from gft_lab import battery as bat
from gft_lab import lemmas
from gft_lab.caratheodory import KernelMixture, kernel_coeffs
from gft_lab.classes import ClassKind, ClassTag, build_member, extremal, extremal_exponent, member_from_p
from gft_lab.figures import FIGURES, figure_data
from gft_lab.functionals import hankel, log_coeffs, toeplitz
from gft_lab.reporting import REPORT_COLUMNS, report_record, report_rows, to_csv, to_json
from gft_lab.series import DEFAULT_ORDER, TruncatedSeries
from gft_lab.verifier import BoundClaim, FunctionalKind, all_claims, search_sup

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
GRID_TOL = 1e-12

GLOBAL_DEFAULTS = {"alpha": "1", "order": None, "seed": 42, "budget": 100_000,
                   "format": None, "out": None}


class ConfigError(ValueError):
    pass


# --------------------------------------------------------------------------
# parsing helpers
# --------------------------------------------------------------------------


def parse_number(text: str) -> float:
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"not a number: {text!r}") from None


def parse_alpha(text: str) -> float:
    al = parse_number(text)
    if not (0 < al <= 1):
        raise ConfigError(f"alpha must lie in (0, 1], got {text}")
    return al


def parse_alpha_grid(spec: str) -> list[float]:
    """``start:stop:step`` inclusive of stop within 1e-12, or a single value."""
    parts = spec.split(":")
    if len(parts) == 1:
        return [parse_alpha(spec)]
    if len(parts) != 3:
        raise ConfigError(f"alpha grid must be start:stop:step, got {spec!r}")
    start, stop, step = (parse_number(p) for p in parts)
    if step <= 0 or stop < start:
        raise ConfigError(f"empty alpha grid {spec!r}")
    out = []
    k = 0
    while start + k * step <= stop + GRID_TOL:
        v = start + k * step
        out.append(stop if abs(v - stop) <= GRID_TOL else v)
        k += 1
    return [parse_alpha(repr(v)) for v in out]


def parse_complex_list(text: str) -> list[complex]:
    try:
        return [complex(p.strip().replace(" ", "")) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ConfigError(f"bad coefficient list {text!r}") from None


def parse_omega(spec: str, order: int) -> TruncatedSeries:
    """``zero``, ``z^k`` or comma-separated b_1, b_2, ... of w = sum b_k z^k."""
    s = spec.strip().lower()
    if s == "zero":
        return TruncatedSeries.zero(order)
    if s.startswith("z^") or s == "z":
        k = int(s[2:]) if s != "z" else 1
        if k < 1:
            raise ConfigError("w = z^k needs k >= 1")
        return TruncatedSeries.monomial(k, order)
    b = parse_complex_list(spec)
    w = TruncatedSeries([0, *b], order)
    if np.sum(np.abs(w.coeffs)) >= 1:
        # sum |b_k| < 1 is a simple sufficient condition for |w| < 1 on the disk
        raise ConfigError("omega coefficients must satisfy sum |b_k| < 1")
    return w


def threads() -> int | None:
    raw = os.environ.get("GFT_LAB_THREADS")
    if raw is None or raw == "":
        return None
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"GFT_LAB_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ConfigError(f"GFT_LAB_THREADS must be a positive integer, got {raw!r}")
    return n


# --------------------------------------------------------------------------
# argument parser
# --------------------------------------------------------------------------


def _globals_parser() -> argparse.ArgumentParser:
    # SUPPRESS lets the flags appear before or after the subcommand
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--alpha", default=argparse.SUPPRESS, help="alpha in (0, 1] (default 1)")
    g.add_argument("--order", type=int, default=argparse.SUPPRESS, help="truncation order N")
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="master seed (default 42)")
    g.add_argument("--budget", type=int, default=argparse.SUPPRESS,
                   help="search evaluations per (claim, alpha) (default 100000)")
    g.add_argument("--format", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
    g.add_argument("--out", default=argparse.SUPPRESS, help="write output here instead of stdout")
    return p


def _member_options(p):
    p.add_argument("--class", dest="klass", choices=[k.value for k in ClassKind], default=None)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--extremal", type=int, help="extremal function index k of f_k (1..8)")
    src.add_argument("--omega", help="Schwarz function: zero, z^k, or b1,b2,...")
    src.add_argument("--angles", help="kernel angles of p (comma-separated); pair with --weights")
    p.add_argument("--weights", help="kernel weights of p (comma-separated, summing to 1)")


def build_parser() -> argparse.ArgumentParser:
    common = _globals_parser()
    parser = argparse.ArgumentParser(prog="gft-lab", parents=[common],
                                     description="Exponential starlike/convex classes: coefficients, "
                                                 "logarithmic coefficients and bound verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="Taylor coefficients a_1..a_N")
    _member_options(p)

    p = sub.add_parser("gamma", parents=[common], help="logarithmic coefficients gamma_1..gamma_m")
    _member_options(p)
    p.add_argument("--m", type=int, default=4)

    for name in ("hankel", "toeplitz"):
        p = sub.add_parser(name, parents=[common], help=f"{name} determinant of log coefficients")
        _member_options(p)
        p.add_argument("--q", type=int, default=2)
        p.add_argument("--n", type=int, default=1)

    p = sub.add_parser("verify", parents=[common], help="search for the suprema and compare with the bounds")
    p.add_argument("--claim", choices=[f.value for f in FunctionalKind])
    p.add_argument("--class", dest="klass", choices=[k.value for k in ClassKind])
    p.add_argument("--n", type=int, help="coefficient index for --claim gamma")
    p.add_argument("--all", action="store_true", help="all six claim families for both classes")
    p.add_argument("--alpha-grid", help="start:stop:step, inclusive")

    p = sub.add_parser("battery", parents=[common], help="sign checks (a)-(i) of the proof inequalities")
    p.add_argument("--alpha-step", default="1/256")
    p.add_argument("--tau-step", default="1/512")

    p = sub.add_parser("figures", parents=[common], help="CSV plot data")
    p.add_argument("--which", required=True, choices=FIGURES)
    p.add_argument("--points", type=int, default=None)

    p = sub.add_parser("lemmas", parents=[common], help="empirical checks of the coefficient lemmas")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--psi-samples", type=int, default=1000)
    p.add_argument("--grid-n", type=int, default=256)
    p.add_argument("--psi", help="evaluate psi and its oracle at A,B,C only")
    return parser


def resolve(args: argparse.Namespace) -> argparse.Namespace:
    for k, v in GLOBAL_DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    if args.order is not None and args.order < 1:
        raise ConfigError("--order must be at least 1")
    if args.budget < 1000:
        raise ConfigError("--budget must be at least 1000")
    return args


# --------------------------------------------------------------------------
# output
# --------------------------------------------------------------------------


def emit(args, payload: dict, text: str, table=None) -> None:
    fmt = args.format or "text"
    if fmt == "json":
        out = to_json(payload)
    elif fmt == "csv":
        if table is None:
            raise ConfigError(f"{args.command} has no CSV form")
        out = to_csv(*table)
    else:
        out = text if text.endswith("\n") else text + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def num(x: float) -> str:
    return format(float(x), ".15g")


def cnum(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return num(z.real)
    return f"{num(z.real)}{'+' if z.imag >= 0 else '-'}{num(abs(z.imag))}i"


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def make_member(args, order: int):
    """(member, source label) from the member options; validates everything first."""
    al = parse_alpha(args.alpha)
    if args.extremal is not None:
        try:
            kind, j = extremal_exponent(args.extremal)
        except ValueError as e:
            raise ConfigError(str(e)) from None
        if args.klass is not None and ClassKind(args.klass) is not kind:
            raise ConfigError(f"f_{args.extremal} belongs to the {kind.value} class")
        return extremal(args.extremal, al, order), f"f{args.extremal}"
    tag = ClassTag(args.klass or ClassKind.STARLIKE, al)
    if args.angles is not None:
        if args.weights is None:
            raise ConfigError("--angles needs --weights")
        try:
            mix = KernelMixture.from_angles([parse_number(x) for x in args.angles.split(",")],
                                            [parse_number(x) for x in args.weights.split(",")])
        except ValueError as e:
            raise ConfigError(str(e)) from None
        return member_from_p(tag, kernel_coeffs(mix, order)), "kernels"
    if args.weights is not None:
        raise ConfigError("--weights needs --angles")
    spec = args.omega or "zero"
    return build_member(tag, parse_omega(spec, order)), f"omega={spec}"


def cmd_expand(args) -> int:
    order = args.order or DEFAULT_ORDER
    member, source = make_member(args, order)
    a = member.a.coeffs[1:]
    payload = {"command": "expand", "class": member.tag.kind.value, "alpha": member.tag.alpha,
               "order": order, "source": source, "coefficients": a.real, "imag": a.imag}
    text = "\n".join(cnum(v) for v in a)
    table = (("k", "re", "im"), [(k, v.real, v.imag) for k, v in enumerate(a, start=1)])
    emit(args, payload, text, table)
    return EXIT_OK


def cmd_gamma(args) -> int:
    if args.m < 1:
        raise ConfigError("--m must be at least 1")
    member, source = make_member(args, max(args.order or 0, args.m + 1))
    g = log_coeffs(member, args.m).gamma
    payload = {"command": "gamma", "class": member.tag.kind.value, "alpha": member.tag.alpha,
               "source": source, "re": g.real, "im": g.imag, "abs": np.abs(g)}
    text = "\n".join(f"gamma_{k} = {cnum(v)}  |.| = {num(abs(v))}" for k, v in enumerate(g, start=1))
    table = (("n", "re", "im", "abs"), [(k, v.real, v.imag, abs(v)) for k, v in enumerate(g, start=1)])
    emit(args, payload, text, table)
    return EXIT_OK


def cmd_determinant(args) -> int:
    if args.q < 1 or args.n < 1:
        raise ConfigError("--q and --n must be at least 1")
    need = args.n + (2 * args.q - 2 if args.command == "hankel" else args.q - 1)
    member, source = make_member(args, max(args.order or 0, need + 1))
    g = log_coeffs(member, need)
    d = (hankel if args.command == "hankel" else toeplitz)(g, args.q, args.n).value
    payload = {"command": args.command, "class": member.tag.kind.value, "alpha": member.tag.alpha,
               "source": source, "q": args.q, "n": args.n, "re": d.real, "im": d.imag, "abs": abs(d)}
    letter = "H" if args.command == "hankel" else "T"
    text = f"{letter}_{{{args.q},{args.n}}} = {cnum(d)}  |.| = {num(abs(d))}"
    emit(args, payload, text, (("q", "n", "re", "im", "abs"), [(args.q, args.n, d.real, d.imag, abs(d))]))
    return EXIT_OK


def selected_claims(args) -> list[BoundClaim]:
    if args.all:
        if args.claim or args.klass or args.n:
            raise ConfigError("--all cannot be combined with --claim/--class/--n")
        return all_claims()
    if not args.claim:
        raise ConfigError("verify needs --claim or --all")
    kinds = [ClassKind(args.klass)] if args.klass else list(ClassKind)
    if args.claim == "gamma":
        ns = [args.n] if args.n else [1, 2, 3, 4]
        try:
            return [BoundClaim(FunctionalKind.GAMMA, k, n) for k in kinds for n in ns]
        except ValueError as e:
            raise ConfigError(str(e)) from None
    if args.n:
        raise ConfigError("--n only applies to --claim gamma")
    return [BoundClaim(args.claim, k) for k in kinds]


def cmd_verify(args) -> int:
    claims = selected_claims(args)
    alphas = parse_alpha_grid(args.alpha_grid) if args.alpha_grid else [parse_alpha(args.alpha)]
    cells = [(c, al) for c in claims for al in alphas]
    with ThreadPoolExecutor(max_workers=threads()) as pool:
        reps = list(pool.map(lambda cell: search_sup(cell[0], cell[1], args.budget, args.seed), cells))
    order = {c: i for i, c in enumerate(all_claims())}
    reps.sort(key=lambda r: (order[r.claim], r.alpha))
    records = [report_record(r) for r in reps]
    passed = all(r["ok"] for r in records)
    payload = {"command": "verify", "passed": passed, "reports": records}

    lines = [f"{'class':9} {'claim':10} {'alpha':>6} {'claimed':>12} {'estimated':>12} "
             f"{'witness':>12} {'slack':>10}  status"]
    for r in records:
        w = "-" if r["witness"] is None else f"{r['witness']:.6g}"
        status = "ok" if r["ok"] else ("EXCEEDED" if not r["no_counterexample"] else "NOT SHARP")
        lines.append(f"{r['class']:9} {r['claim']:10} {r['alpha']:6.4g} {r['claimed']:12.6g} "
                     f"{r['estimated_sup']:12.6g} {w:>12} {r['slack']:10.3g}  {status}")
    lines.append(f"{sum(r['ok'] for r in records)}/{len(records)} cells passed")
    summary = "\n".join(lines) + "\n"
    table = (REPORT_COLUMNS, report_rows(records))
    if args.out:
        emit(args if args.format else _with_format(args, "json"), payload, summary, table)
        sys.stdout.write(summary)
    else:
        emit(args, payload, summary, table)
    return EXIT_OK if passed else EXIT_FAIL


def _with_format(args, fmt):
    ns = argparse.Namespace(**vars(args))
    ns.format = fmt
    return ns


def cmd_battery(args) -> int:
    hs, ht = parse_number(args.alpha_step), parse_number(args.tau_step)
    if not (0 < hs <= bat.MAX_ALPHA_STEP):
        raise ConfigError(f"--alpha-step must lie in (0, 1/64], got {args.alpha_step}")
    if not (0 < ht <= bat.DEFAULT_TAU_STEP):
        raise ConfigError(f"--tau-step must lie in (0, 1/512], got {args.tau_step}")
    rep = bat.proof_inequality_battery(hs, ht)
    checks = [{"name": c.name, "title": bat.CHECK_TITLES[c.name], "passed": c.passed,
               "worst_margin": c.worst_margin, "details": c.details} for c in rep.checks]
    payload = {"command": "battery", "passed": rep.passed, "alpha_step": hs, "tau_step": ht,
               "checks": checks, "findings": rep.findings}
    lines = []
    for c in rep.checks:
        extra = f"  inner(1) = {c.details['inner_at_alpha1']}" if c.name == "a" else ""
        lines.append(f"({c.name}) {'PASS' if c.passed else 'FAIL'}  margin = {c.worst_margin:.6g}  "
                     f"{bat.CHECK_TITLES[c.name]}{extra}")
    lines += [f"finding: {f}" for f in rep.findings]
    table = (("check", "passed", "worst_margin", "title"),
             [(c["name"], c["passed"], c["worst_margin"], c["title"]) for c in checks])
    emit(args, payload, "\n".join(lines), table)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_figures(args) -> int:
    if args.points is not None and args.points < 2:
        raise ConfigError("--points must be at least 2")
    header, rows = figure_data(args.which, args.points)
    payload = {"command": "figures", "which": args.which, "columns": list(header), "rows": rows}
    fmt_args = args if args.format else _with_format(args, "csv")
    text = to_csv(header, rows)
    emit(fmt_args, payload, text, (header, rows))
    return EXIT_OK


def cmd_lemmas(args) -> int:
    if args.psi:
        vals = [parse_number(x) for x in args.psi.split(",")]
        if len(vals) != 3:
            raise ConfigError("--psi takes A,B,C")
        inp = lemmas.PsiInput(*vals)
        p, o = lemmas.psi(inp), lemmas.psi_oracle(inp, args.grid_n)
        payload = {"command": "lemmas", "passed": bool(p >= o - 1e-9), "suites": [],
                   "psi": {"A": inp.A, "B": inp.B, "C": inp.C, "psi": p, "oracle": o}}
        emit(args, payload, f"psi = {num(p)}  oracle = {num(o)}")
        return EXIT_OK if payload["passed"] else EXIT_FAIL
    if args.samples < 1 or args.psi_samples < 1:
        raise ConfigError("sample counts must be positive")
    seed = args.seed
    counted = [
        lemmas.psi_suite(args.psi_samples, seed, args.grid_n),
        lemmas.empirical_lemma21(args.samples, seed),
        lemmas.empirical_lemma22(args.samples, seed),
        lemmas.empirical_lemma23(args.samples, seed),
    ]
    informational = [lemmas.empirical_lemma22(args.samples, seed, source_form=True)]
    suites = [(r, True) for r in counted] + [(r, False) for r in informational]
    rows = [{"name": r.name, "samples": r.samples, "violations": r.violations,
             "worst_excess": r.worst_excess, "passed": r.passed, "counted": c, "details": r.details}
            for r, c in suites]
    passed = all(r.passed for r in counted)
    payload = {"command": "lemmas", "passed": passed, "suites": rows}
    lines = [f"{r.name:24} {'PASS' if r.passed else 'FAIL'}  violations {r.violations}/{r.samples}  "
             f"worst excess {r.worst_excess:.4g}{'' if c else '  (informational)'}" for r, c in suites]
    table = (("suite", "samples", "violations", "worst_excess", "passed", "counted"),
             [(r["name"], r["samples"], r["violations"], r["worst_excess"], r["passed"], r["counted"])
              for r in rows])
    emit(args, payload, "\n".join(lines), table)
    return EXIT_OK if passed else EXIT_FAIL


COMMANDS = {"expand": cmd_expand, "gamma": cmd_gamma, "hankel": cmd_determinant,
            "toeplitz": cmd_determinant, "verify": cmd_verify, "battery": cmd_battery,
            "figures": cmd_figures, "lemmas": cmd_lemmas}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_CONFIG
    try:
        return COMMANDS[args.command](resolve(args))
    except (ValueError, LookupError, OSError) as e:
        # ConfigError and the modules' input errors both land here
        print(f"gft-lab: error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception:
        # keep the exit-code contract (0/1/2) even for unexpected failures
        traceback.print_exc()
        return EXIT_CONFIG


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
