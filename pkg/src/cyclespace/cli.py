"""Command-line front end: ``cyclespace {levels,verify,spaces,spectrum,ssl}``.

Exit codes: 0 success, 1 a verification failed, 2 bad configuration,
3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import config
from .config import BudgetExceeded

log = logging.getLogger("cyclespace")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_BUDGET = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)
        log.info("wrote %s", path)


def _validate(args) -> None:
    try:
        config.check_modulus(args.m)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if args.N < 1:
        raise ConfigError("N must be at least 1")


def cmd_levels(args) -> int:
    from .group import feasible_signatures, level_set
    o = int(args.one_based)
    rows, total = [], 0
    for sig in feasible_signatures(args.m, args.N):
        if args.max_distance is not None and sig.distance > args.max_distance:
            continue
        r = level_set(args.m, args.N, sig)
        total += len(r)
        span = f"{r.start + o}" if len(r) == 1 else f"{r.start + o}-{r.stop - 1 + o}"
        rows.append(f"{sig.label():<16}{len(r):>8}  {span}\n")
    out = f"{'level set':<16}{'size':>8}  indices\n" + "".join(rows) + f"{'total':<16}{total:>8}\n"
    _write(out, args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .group import enumerate_vertices
    from .invariant import all_V, corrupt, space_suite, verify_invariance
    from .operators import OperatorSet
    from .theorems import Check, run_suite

    config.check_dense_budget(args.m, args.N)
    checks = run_suite(args.m, args.N, include_stated=not args.corrected_only)
    checks += space_suite(args.m, args.N, include_stated=not args.corrected_only)
    ops = OperatorSet(enumerate_vertices(args.m, args.N))
    candidates = sorted((v for _, v in all_V(ops)), key=lambda b: -b.dim)
    bad = next((b for b in (corrupt(v, ops.table, seed=args.seed) for v in candidates) if b is not None), None)
    if bad is not None:
        checks.append(Check("negative control: corrupted basis rejected", not verify_invariance(bad, ops.A)))
    lines = [c.line() for c in checks]
    if bad is None:
        lines.append("[SKIP] negative control: no vertex next to a basis vector lies outside the spans")
    failed = sum(not c.passed for c in checks)
    lines.append(f"{len(checks) - failed}/{len(checks)} checks passed for m={args.m} N={args.N}")
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK if failed == 0 else EXIT_FAIL


def cmd_spaces(args) -> int:
    from .group import enumerate_vertices
    from .invariant import all_W, build_V, build_W, verify_invariance
    from .operators import OperatorSet

    config.check_dense_budget(args.m, args.N)
    ops = OperatorSet(enumerate_vertices(args.m, args.N))
    if args.params:
        try:
            Ws = [build_W(ops, args.params)]
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    else:
        Ws = all_W(ops, nonempty=not args.include_empty)
    docs, lines, ok = [], [], True
    for W in Ws:
        V = build_V(ops, W)
        inv = verify_invariance(V, ops.A) if V.dim else None
        ok &= inv is not False
        lines.append(f"{V.label():<40} dim W={W.dim:<4} dim V={V.dim:<5} invariant={inv}")
        docs.append({"W": W.to_json(), "V": V.to_json(), "invariant": inv})
    sys.stdout.write("\n".join(lines) + "\n")
    if args.output:
        _write(json.dumps(docs, sort_keys=True) + "\n", args.output)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_spectrum(args) -> int:
    from .spectral import gft
    fb = gft(args.m, args.N)
    _write(fb.catalog_csv(one_based=args.one_based), args.output)
    return EXIT_OK


def cmd_ssl(args) -> int:
    from .ssl import (SslConfig, fig3_data, fig4_data, fig5_data, level_vector_check,
                      link_to_invariant_spaces, report_csv, report_json, run, class_table_lines)

    cfg = SslConfig(args.m, args.N, args.K, zero_tol=args.zero_tol,
                    cluster_tol=args.cluster_tol, r1_tol=args.r1_tol)
    try:
        cfg.validate()
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    report = run(cfg)
    out = [f"C_{cfg.m}^{cfg.N}, ball radius {cfg.K}: {report.rank} nonzero eigenvalues"]
    out += class_table_lines(report, one_based=True)
    ok = report.diagnostics["ok"] and not report.diagnostics["ambiguous"]
    lv_ok, lv_n = level_vector_check(report)
    out.append(f"level vectors: {lv_n}, constant on level sets: {lv_ok}")
    ok &= lv_ok
    if args.link:
        from .invariant import all_V
        from .operators import OperatorSet
        ops = OperatorSet(report.table)
        spaces = {V.label(): V.matrix() for _, V in all_V(ops)}
        for L in link_to_invariant_spaces(report, spaces):
            parts = ", ".join(f"{k}:{d}" for k, d in L.parts.items())
            out.append(f"cluster {L.cluster[0] + 1}-{L.cluster[1]} dim {L.dim} -> {parts}  residual {L.residual:.1e}")
            ok &= L.ok
    if report.diagnostics["ambiguous"]:
        out.append(f"ambiguous clusters: {report.diagnostics['ambiguous']}")
    sys.stdout.write("\n".join(out) + "\n")

    if args.output:
        text = report_json(report) if args.format == "json" else report_csv(report)
        _write(text, args.output)
    emitters = {"fig3": fig3_data, "fig4": fig4_data, "fig5": fig5_data}
    outdir = Path(args.outdir)
    for name in args.emit or []:
        outdir.mkdir(parents=True, exist_ok=True)
        _write(emitters[name](report), str(outdir / f"{name}.txt"))
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cyclespace", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--m", type=int, required=True, help="cycle length (3, 4 or 5)")
        p.add_argument("--N", type=int, required=True, help="number of factors")
        p.add_argument("--output", "-o", default=None, help="output file (default stdout)")

    p = sub.add_parser("levels", help="level sets with sizes and index ranges")
    common(p)
    p.add_argument("--one-based", action="store_true")
    p.add_argument("--max-distance", type=int, default=None)
    p.set_defaults(func=cmd_levels)

    p = sub.add_parser("verify", help="run the exact identity checks")
    common(p)
    p.add_argument("--corrected-only", action="store_true",
                   help="skip the stated (failing) m = 5 commutator forms")
    p.add_argument("--seed", type=int, default=0, help="seed for the negative control")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spaces", help="dump W and V bases as JSON")
    common(p)
    p.add_argument("--params", type=int, nargs="+", default=None,
                   help="m=3: r lam; m=4: p q; m=5: p q lam mu")
    p.add_argument("--include-empty", action="store_true")
    p.set_defaults(func=cmd_spaces)

    p = sub.add_parser("spectrum", help="adjacency / Laplacian eigencatalog as CSV")
    common(p)
    p.add_argument("--one-based", action="store_true")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("ssl", help="spatio-spectral limiting experiment")
    common(p)
    p.add_argument("--K", type=int, required=True, help="ball radius")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--emit", action="append", choices=("fig3", "fig4", "fig5"))
    p.add_argument("--outdir", default=".", help="directory for --emit files")
    p.add_argument("--zero-tol", type=float, default=config.ZERO_TOL)
    p.add_argument("--cluster-tol", type=float, default=config.CLUSTER_TOL)
    p.add_argument("--r1-tol", type=float, default=config.R1_RESIDUAL_TOL)
    p.add_argument("--link", action="store_true", help="also link eigenspaces to V spaces")
    p.set_defaults(func=cmd_ssl)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        _validate(args)
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
