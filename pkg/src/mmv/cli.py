"""Command-line entry point.

Exit codes: 0 when every asserted check holds and nothing was found,
2 when the run succeeded and at least one conjectured inequality failed
(a finding), 1 on input errors or a failed theorem check.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import explore, verify
from .matcore import ConvergenceError, MatrixError, load_matrix, matrix_power, save_matrix, singular_values
from .means import bourin_mean, heinz_sum, mean_pair
from .norms import OPERATOR, norm, parse_norm
from .report import format_number

EXIT_OK, EXIT_ERROR, EXIT_FINDING = 0, 1, 2

CHECKS = ("alt", "strip", "heinz", "bvh", "bourin", "sj", "remark", "chain")


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which would read as a finding
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def parse_range(text: str) -> np.ndarray:
    """``a:b:n`` -> ``n`` equally spaced points from ``a`` to ``b`` inclusive."""
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"expected a:b:n, got {text!r}")
    try:
        a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"expected a:b:n, got {text!r}") from None
    if n < 1:
        raise UsageError("point count must be positive")
    return np.array([a]) if n == 1 else np.linspace(a, b, n)


def parse_grid(text: str) -> verify.GridSpec:
    """``re:a:b:n,im:m:k`` -> :class:`~mmv.verify.GridSpec`."""
    try:
        re_part, im_part = text.split(",")
        r = re_part.split(":")
        i = im_part.split(":")
        if r[0] != "re" or i[0] != "im" or len(r) != 4 or len(i) != 3:
            raise ValueError
        return verify.GridSpec(float(r[1]), float(r[2]), int(r[3]), float(i[1]), int(i[2]))
    except ValueError:
        raise UsageError(f"expected re:a:b:n,im:m:k, got {text!r}") from None


def parse_complex(text: str) -> complex:
    s = text.strip().replace(" ", "")
    if s.endswith("i"):
        s = s[:-1] + "j"
        if s == "j" or s[-2] in "+-":
            s = s[:-1] + "1j"
    try:
        return complex(s)
    except ValueError:
        raise UsageError(f"cannot parse complex number {text!r}") from None


def _load_pair(args):
    return mean_pair(load_matrix(args.a), load_matrix(args.b))


def _emit(reports) -> tuple[int, int]:
    failures = findings = 0
    for r in reports:
        print(r.as_line())
        failures += r.is_failure
        findings += r.is_finding
    return failures, findings


def _status(failures: int, findings: int) -> int:
    print(f"theorem_failures={failures} findings={findings}")
    if failures:
        return EXIT_ERROR
    return EXIT_FINDING if findings else EXIT_OK


def cmd_verify(args) -> int:
    pair = _load_pair(args)
    kind = parse_norm(args.norm)
    if args.t_grid is not None:
        ts = parse_range(args.t_grid)
    else:
        ts = np.array([args.t])
    if np.any(ts < 0) or np.any(ts > 1):
        raise UsageError("t values must lie in [0, 1]")
    checks = CHECKS if "all" in args.check else args.check
    grid = parse_grid(args.grid) if args.grid else verify.DEFAULT_GRID
    reports = []
    if "alt" in checks:
        reports += [verify.check_alt_lemma(pair, float(r)) for r in args.r.split(",")]
    if "strip" in checks:
        reports += verify.check_strip_inequality(pair, grid, exploratory=True)
    for t in map(float, ts):
        if "heinz" in checks:
            reports.append(verify.check_heinz(pair, t, kind))
        if "chain" in checks:
            reports += verify.check_frobenius_chain(pair, t, exploratory=True)
        if "bvh" in checks:
            reports.append(verify.check_bourin_vs_heinz(pair, t, kind))
        if "bourin" in checks:
            reports.append(verify.check_bourin_bound(pair, t, kind))
        if "sj" in checks:
            if 0.0 < t < 1.0:
                reports += verify.check_singular_dominance(pair, t)
            else:
                print(f"skipping sj at t={t}: needs 0 < t < 1", file=sys.stderr)
        if "remark" in checks:
            reports.append(verify.check_remark_quantity(pair, t, exploratory=True))
    return _status(*_emit(reports))


def _write_table(table, out) -> None:
    if out == "-":
        explore.write_csv(table, sys.stdout)
    else:
        explore.write_csv(table, out)
        print(f"wrote={out} rows={len(table)}")


def cmd_sweep(args) -> int:
    pair = _load_pair(args)
    ts = parse_range(args.t)
    if len(ts) < 2:
        raise UsageError("a sweep needs at least two t values")
    table = explore.sweep_t(pair, parse_norm(args.norm), float(ts[0]), float(ts[-1]), len(ts))
    _write_table(table, args.out)
    return EXIT_OK


def cmd_strip(args) -> int:
    pair = _load_pair(args)
    grid = parse_grid(args.grid) if args.grid else verify.DEFAULT_GRID
    _write_table(explore.sweep_strip(pair, grid), args.out)
    return EXIT_OK


def _threads() -> int | None:
    value = os.environ.get("MMV_THREADS")
    if not value:
        return None
    try:
        n = int(value)
    except ValueError:
        raise UsageError(f"MMV_THREADS must be a positive integer, got {value!r}") from None
    if n < 1:
        raise UsageError("MMV_THREADS must be a positive integer")
    return n


def cmd_search(args) -> int:
    config = explore.SearchConfig(
        dim=args.dim,
        trials=args.trials,
        seed=args.seed,
        style=args.style,
        norm=parse_norm(args.norm),
        t_grid=tuple(float(t) for t in parse_range(args.t_grid)),
        target=args.target,
    )
    result = explore.search_counterexample(config, workers=_threads())
    print(f"found={format_number(result.found)} trials_used={result.trials_used}")
    if not result.found:
        return EXIT_OK
    print(result.witness.report.as_line())
    if args.out_dir:
        for path in explore.save_witness(result, config, args.out_dir):
            print(f"wrote={path}")
    return EXIT_FINDING


def _published(name, quantity, published, computed, ok) -> bool:
    print(
        f"example={name} quantity={quantity} published={published} "
        f"computed={format_number(float(computed))} match={format_number(bool(ok))}"
    )
    return bool(ok)


def cmd_reproduce(args) -> int:
    name = args.example
    pair = explore.builtin_example(name)
    matches = []
    if name == "example1":
        t = 0.15
        diff = norm(heinz_sum(pair, t), OPERATOR) - norm(bourin_mean(pair, t), OPERATOR)
        matches.append(_published(name, "normh_minus_normb(t=0.15,op)", -2.3, diff, -2.4 <= diff <= -2.2))
        rep = verify.check_bourin_vs_heinz(pair, t, OPERATOR)
        finding = not rep.holds
        print(rep.as_line())
    else:
        sb = singular_values(bourin_mean(pair, 0.5))
        ss = singular_values(pair.A.data + pair.B.data)
        for j, (pub, val) in enumerate(zip((6826.57, 878.499, 591.716), sb), 1):
            matches.append(_published(name, f"s{j}(b_1/2)", pub, val, abs(val - pub) <= 1e-3 * pub))
        for j, (pub, val) in enumerate(zip((10561.4, 3629.62, 443.017), ss), 1):
            matches.append(_published(name, f"s{j}(A+B)", pub, val, abs(val - pub) <= 1e-3 * pub))
        reports = verify.check_singular_dominance(pair, 0.5)
        _emit(reports)
        finding = any(r.is_finding for r in reports)
    n_bad = matches.count(False)
    print(f"published_matches={len(matches) - n_bad}/{len(matches)} finding_reproduced={format_number(finding)}")
    if n_bad:
        print(f"note: {n_bad} computed value(s) differ from the published digits by more than the tolerance",
              file=sys.stderr)
    return EXIT_FINDING if finding else EXIT_ERROR


def cmd_power(args) -> int:
    A = load_matrix(args.a)
    z = parse_complex(args.z)
    P = matrix_power(A, z)
    save_matrix(P, args.out)
    print(f"wrote={args.out} n={P.shape[0]} z={format_number(z)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mmv", description="Numerical checks of Bourin/Heinz matrix-mean inequalities.")
    sub = parser.add_subparsers(dest="command", required=True)

    def pair_args(p):
        p.add_argument("--a", required=True, help="JSON matrix file for A")
        p.add_argument("--b", required=True, help="JSON matrix file for B")

    p = sub.add_parser("verify", help="run inequality checks on a matrix pair")
    pair_args(p)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--t", type=float, default=0.5)
    g.add_argument("--t-grid", help="a:b:n")
    p.add_argument("--norm", default="op", help="op, fro, s:<p> or kf:<k>")
    p.add_argument("--check", nargs="+", default=["all"], choices=CHECKS + ("all",))
    p.add_argument("--r", default="2,4", help="comma-separated exponents for the alt check")
    p.add_argument("--grid", help="re:a:b:n,im:m:k for the strip check")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="tabulate norms of b_t and h_t over t")
    pair_args(p)
    p.add_argument("--norm", default="op")
    p.add_argument("--t", required=True, help="a:b:n")
    p.add_argument("--out", required=True, help="CSV path, or - for stdout")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("strip", help="tabulate f(z) over a grid in the complex strip")
    pair_args(p)
    p.add_argument("--grid", help="re:a:b:n,im:m:k")
    p.add_argument("--out", required=True, help="CSV path, or - for stdout")
    p.set_defaults(func=cmd_strip)

    p = sub.add_parser("search", help="random counterexample search")
    p.add_argument("--target", required=True, choices=explore.TARGETS)
    p.add_argument("--style", default="dense", choices=explore.STYLES)
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--norm", default="op")
    p.add_argument("--t-grid", default="0.5:0.5:1", help="a:b:n")
    p.add_argument("--out-dir", help="directory for witness files")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("reproduce", help="recompute a published counterexample")
    p.add_argument("example", choices=sorted(explore.EXAMPLES))
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("power", help="complex power A^z of a psd matrix")
    p.add_argument("--a", required=True)
    p.add_argument("--z", required=True, help="e.g. 0.5, 0.5+3i, -2i")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_power)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, MatrixError, ConvergenceError, ValueError, OSError) as exc:
        print(f"mmv {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
