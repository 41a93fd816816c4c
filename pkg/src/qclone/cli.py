"""Command-line driver: verification runs, sweeps, machine-readable reports.

Subcommands:
    bounds      exact ledger values and identity checks for (n, m, l)
    clone       run the cloning channel and certify universality for (n, m)
    estimate    exact-quadrature and Monte Carlo estimation for m copies
    concat      chain-multiplicativity check for (n, m, l)
    verify-all  the full verification grid; exit 0 iff every check passes

All randomness flows from --seed, so identical invocations produce
byte-identical reports (timing goes to stderr, never into the report).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction

import numpy as np

from . import bounds as bd
from .cloner import CloneChannel, apply_cloner, certify_universality, measure_shrinking, tensor_power_input
from .estimator import (
    estimate_monte_carlo,
    estimation_fidelity_exact,
    measure_and_prepare_channel,
    povm_completeness_residual,
    verify_statement_b,
)
from .linalg import bloch_of, haar_random_pure, min_eigenvalue, partial_trace, rng_from_seed
from .symspace import pseudo_mixture_decompose, random_symmetric_density, symmetrizer

DEFAULT_TOL = 1e-9


def _fmt(x):
    """Floats at 12 significant digits for CSV cells."""
    if isinstance(x, float):
        return f"{x:.12g}"
    return "" if x is None else str(x)


def _check(name, expected, actual, tol, n=None, m=None, l=None):
    if isinstance(expected, Fraction):
        expected_repr = f"{expected.numerator}/{expected.denominator}"
        expected_val = float(expected)
    else:
        expected_repr = _fmt(float(expected))
        expected_val = float(expected)
    err = abs(float(actual) - expected_val)
    return {
        "name": name,
        "n": n, "m": m, "l": l,
        "expected": expected_repr,
        "actual": float(actual),
        "abs_error": err,
        "tolerance": tol,
        "pass": bool(err < tol),
    }


def _flag(name, holds, n=None, m=None, l=None):
    return {
        "name": name,
        "n": n, "m": m, "l": l,
        "expected": "true",
        "actual": 1.0 if holds else 0.0,
        "abs_error": 0.0 if holds else 1.0,
        "tolerance": 0.5,
        "pass": bool(holds),
    }


# ---------------------------------------------------------------- subcommands

def run_bounds(n, m, l):
    l = l if l is not None else m
    rep = bd.check_identities(n, m, l)
    checks = [
        _check("eta_opt", rep.eta_opt, float(rep.eta_opt), 1e-15, n=n, m=m),
        _check("fidelity_opt", rep.fidelity_opt, float(rep.fidelity_opt), 1e-15, n=n, m=m),
        _check("eta_meas_opt", rep.eta_meas_opt, float(rep.eta_meas_opt), 1e-15, m=m),
        _check("fidelity_meas_opt", rep.fidelity_meas_opt, float(rep.fidelity_meas_opt), 1e-15, m=m),
    ]
    for name, holds, _slack in rep.inequality_checks:
        checks.append(_flag(name, holds, n=n, m=m, l=l))
    results = {
        "eta_opt": f"{rep.eta_opt.numerator}/{rep.eta_opt.denominator}",
        "eta_opt_float": float(rep.eta_opt),
        "fidelity_opt": f"{rep.fidelity_opt.numerator}/{rep.fidelity_opt.denominator}",
        "fidelity_opt_float": float(rep.fidelity_opt),
        "eta_meas_opt": f"{rep.eta_meas_opt.numerator}/{rep.eta_meas_opt.denominator}",
        "fidelity_meas_opt": f"{rep.fidelity_meas_opt.numerator}/{rep.fidelity_meas_opt.denominator}",
    }
    return results, checks


def run_clone(n, m, samples, seed, tol):
    ch = CloneChannel(n, m)
    rep = certify_universality(ch, samples, seed)
    exact = bd.eta_opt(n, m)
    checks = [
        _check("clone-eta", exact, rep.eta_measured, tol, n=n, m=m),
        _check("clone-fidelity", bd.fidelity_opt(n, m), rep.fidelity_measured, tol, n=n, m=m),
        _check("universality-spread", 0.0, rep.universality_spread, tol, n=n, m=m),
        _check("output-symmetric-residual", 0.0, rep.output_symmetric_residual, 1e-11, n=n, m=m),
    ]
    results = {
        "n": n, "m": m, "samples": samples, "seed": seed,
        "eta_measured": rep.eta_measured,
        "eta_predicted": f"{exact.numerator}/{exact.denominator}",
        "fidelity_measured": rep.fidelity_measured,
        "universality_spread": rep.universality_spread,
        "output_symmetric_residual": rep.output_symmetric_residual,
    }
    return results, checks


def run_estimate(m, shots, seed, tol):
    psi = haar_random_pure(rng_from_seed(seed))
    exact = estimation_fidelity_exact(m, psi)
    checks = [
        _check("estimate-fidelity-exact", bd.fidelity_meas_opt(m),
               exact.fidelity_measured, tol, m=m),
        _check("povm-completeness", 0.0, povm_completeness_residual(m), 1e-10, m=m),
    ]
    results = {
        "m": m, "seed": seed,
        "fidelity_exact": exact.fidelity_measured,
        "fidelity_predicted": f"{bd.fidelity_meas_opt(m).numerator}/{bd.fidelity_meas_opt(m).denominator}",
        "eta_exact": exact.eta_measured,
        "quadrature_order": exact.quadrature_order,
    }
    if shots:
        mc = estimate_monte_carlo(m, psi, shots, seed)
        band = max(4 * mc.statistical_error, 1e-12)
        checks.append(_check("estimate-fidelity-mc", bd.fidelity_meas_opt(m),
                             mc.fidelity_measured, band, m=m))
        results.update({
            "fidelity_mc": mc.fidelity_measured,
            "mc_shots": shots,
            "mc_statistical_error": mc.statistical_error,
        })
    return results, checks


def run_concat(n, m, l, seed, tol):
    psi = haar_random_pure(rng_from_seed(seed))
    rho_n = tensor_power_input(psi, n)
    first, second, direct = CloneChannel(n, m), CloneChannel(m, l), CloneChannel(n, l)
    mid = apply_cloner(first, rho_n)
    eta1 = measure_shrinking(first, rho_n).eta_measured
    eta2 = measure_shrinking(second, mid).eta_measured
    eta_chain = eta1 * eta2
    eta_direct = measure_shrinking(direct, rho_n).eta_measured
    exact = bd.eta_opt(n, l)
    checks = [
        _check("concat-chain-eta", exact, eta_chain, tol, n=n, m=m, l=l),
        _check("concat-direct-eta", exact, eta_direct, tol, n=n, m=m, l=l),
        _check("concat-product-vs-direct", eta_direct, eta_chain, tol, n=n, m=m, l=l),
    ]
    results = {
        "n": n, "m": m, "l": l, "seed": seed,
        "eta_stage1": eta1, "eta_stage2": eta2,
        "eta_chain": eta_chain, "eta_direct": eta_direct,
        "eta_exact": f"{exact.numerator}/{exact.denominator}",
    }
    return results, checks


def run_verify_all(seed, samples, tol):
    checks = []

    # Exact ledger grid: all chains up to 50, plus monotonicity.
    bad = 0
    total = 0
    for n in range(1, 51):
        for m in range(n, 51):
            for l in range(m, 51):
                total += 1
                if bd.eta_opt(n, m) * bd.eta_opt(m, l) != bd.eta_opt(n, l):
                    bad += 1
    checks.append(_flag(f"ledger-chain-identity-grid-50 ({total} triples)", bad == 0))
    mono = all(bd.eta_opt(n, m) > bd.eta_opt(n, m + 1)
               for n in range(1, 51) for m in range(n, 51)) and \
           all(bd.eta_opt(n, m) < bd.eta_opt(n + 1, m)
               for m in range(2, 51) for n in range(1, min(m, 50)))
    checks.append(_flag("ledger-monotonicity-grid-50", mono))

    # Cloning grid N <= 4, M <= 8.
    for n in range(1, 5):
        for m in range(n, 9):
            _, cs = run_clone(n, m, samples, seed + 31 * n + m, tol)
            checks.extend(cs)
            checks.extend(_sanity_checks(n, m, seed + 997 + 31 * n + m))

    # Concatenation chains, L <= 8.
    for n in range(1, 5):
        for m in range(n, 9):
            for l in range(m, 9):
                _, cs = run_concat(n, m, l, seed + 7 * n + 5 * m + l, tol)
                checks.extend(cs)

    # Estimation: exact M <= 5, Monte Carlo M <= 3.
    for m in range(1, 6):
        shots = samples * 200 if m <= 3 else 0
        _, cs = run_estimate(m, shots, seed + 100 + m, 1e-8)
        checks.extend(cs)

    # Composition of cloning with measure-and-prepare, M <= 2, L <= 6.
    for m in (1, 2):
        for l in range(m, 7):
            rep = verify_statement_b(m, l, haar_random_pure(rng_from_seed(seed + 13 * m + l)))
            checks.append(_check(f"composition-fidelity", rep.predicted_fidelity,
                                 rep.composed_fidelity, 1e-8, m=m, l=l))
            checks.append(_check(f"composition-l-independence", rep.direct_fidelity,
                                 rep.composed_fidelity, 1e-8, m=m, l=l))

    # Mixed symmetric inputs: cloner and measurement both scale linearly.
    rng = rng_from_seed(seed + 777)
    for n in (1, 2, 3):
        rho_n = random_symmetric_density(n, rng, min_bloch=0.1)
        s_in = bloch_of(partial_trace(rho_n, {0}, n)) if n > 1 else bloch_of(rho_n)
        m = n + 2
        rep = measure_shrinking(CloneChannel(n, m), rho_n)
        checks.append(_check("mixed-input-clone-eta", bd.eta_opt(n, m),
                             rep.eta_measured, tol, n=n, m=m))
        rho_bar = measure_and_prepare_channel(n, rho_n)
        scale = np.linalg.norm(bloch_of(rho_bar)) / np.linalg.norm(s_in)
        checks.append(_check("mixed-input-measurement-eta", bd.eta_meas_opt(n),
                             scale, tol, m=n))

    # Pseudo-mixture decompositions.
    rng = rng_from_seed(seed + 888)
    saw_negative = False
    worst_residual = 0.0
    worst_sum = 0.0
    for n in (1, 2, 3, 4):
        for _ in range(5):
            pm = pseudo_mixture_decompose(random_symmetric_density(n, rng))
            worst_residual = max(worst_residual, pm.residual)
            worst_sum = max(worst_sum, abs(float(pm.weights.sum()) - 1.0))
            saw_negative = saw_negative or pm.min_weight < 0
    checks.append(_check("pseudo-mixture-residual", 0.0, worst_residual, 1e-9))
    checks.append(_check("pseudo-mixture-weight-sum", 0.0, worst_sum, 1e-10))
    checks.append(_flag("pseudo-mixture-negative-weight-observed", saw_negative))

    results = {
        "seed": seed,
        "samples": samples,
        "n_checks": len(checks),
        "n_failed": sum(1 for c in checks if not c["pass"]),
    }
    return results, checks


def _sanity_checks(n, m, seed):
    """Full-space channel sanity: trace, positivity, support, reductions."""
    ch = CloneChannel(n, m)
    psi = haar_random_pure(rng_from_seed(seed))
    out = apply_cloner(ch, tensor_power_input(psi, n))
    checks = [
        _check("sanity-trace", 1.0, float(out.trace().real), 1e-12, n=n, m=m),
        _flag("sanity-min-eigenvalue", min_eigenvalue(out) >= -1e-10, n=n, m=m),
    ]
    comp = np.eye(2 ** m) - symmetrizer(m)
    checks.append(_check("sanity-symmetric-residual", 0.0,
                         float(np.max(np.abs(comp @ out))), 1e-11, n=n, m=m))
    reductions = [partial_trace(out, {q}, m) for q in range(m)] if m > 1 else [out]
    dev = max(float(np.max(np.abs(r - reductions[0]))) for r in reductions)
    checks.append(_check("sanity-reductions-identical", 0.0, dev, 1e-11, n=n, m=m))
    return checks


# ------------------------------------------------------------------- emission

def _emit_json(report, stream):
    json.dump(report, stream, indent=2)
    stream.write("\n")


def _emit_csv(report, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["n", "m", "l", "quantity", "expected", "actual", "abs_error", "pass"])
    for c in report["checks"]:
        writer.writerow([
            _fmt(c["n"]), _fmt(c["m"]), _fmt(c["l"]), c["name"],
            c["expected"], _fmt(c["actual"]), _fmt(c["abs_error"]),
            "true" if c["pass"] else "false",
        ])


def _emit_table(report, stream):
    use_color = stream.isatty() and not os.environ.get("NO_COLOR")
    ok, bad = ("\x1b[32mpass\x1b[0m", "\x1b[31mFAIL\x1b[0m") if use_color else ("pass", "FAIL")
    rows = [("check", "params", "expected", "actual", "status")]
    for c in report["checks"]:
        params = ",".join(f"{k}={c[k]}" for k in ("n", "m", "l") if c[k] is not None)
        rows.append((c["name"], params, c["expected"], _fmt(c["actual"]),
                     ok if c["pass"] else bad))
    widths = [max(len(str(r[i])) for r in rows) for i in range(4)]
    for r in rows:
        stream.write("  ".join(str(r[i]).ljust(widths[i]) for i in range(4)) + "  " + r[4] + "\n")


def _emit(report, fmt, path):
    try:
        if path:
            with open(path, "w", encoding="utf-8") as f:
                _dispatch_emit(report, fmt, f)
        else:
            _dispatch_emit(report, fmt, sys.stdout)
    except OSError as exc:
        print(f"error: cannot write report: {exc}", file=sys.stderr)
        raise SystemExit(3)


def _dispatch_emit(report, fmt, stream):
    if fmt == "json":
        _emit_json(report, stream)
    elif fmt == "csv":
        _emit_csv(report, stream)
    else:
        _emit_table(report, stream)


# ----------------------------------------------------------------- entrypoint

def build_parser():
    parser = argparse.ArgumentParser(
        prog="qclone",
        description="Universal qubit cloning and state estimation verification suite.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_format):
        p.add_argument("--seed", type=int, default=1, help="64-bit RNG seed")
        p.add_argument("--samples", type=int, default=50, help="random inputs per cell")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL,
                       help="tolerance for physics checks")
        p.add_argument("--format", choices=["json", "csv", "table"],
                       default=default_format, dest="output_format")
        p.add_argument("--output", type=str, default=None, help="write report to file")

    p = sub.add_parser("bounds", help="exact ledger values and identities")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--l", type=int, default=None)
    common(p, "table")

    p = sub.add_parser("clone", help="run and certify the n->m cloner")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    common(p, "json")

    p = sub.add_parser("estimate", help="estimation on m copies, exact + MC")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--shots", type=int, default=10000, help="Monte Carlo shots (0 = skip)")
    common(p, "json")

    p = sub.add_parser("concat", help="chain multiplicativity for (n, m, l)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    common(p, "json")

    p = sub.add_parser("verify-all", help="full verification grid")
    common(p, "json")

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    t0 = time.monotonic()
    try:
        if args.command == "bounds":
            if args.l is not None and not args.n <= args.m <= args.l:
                raise ValueError("need n <= m <= l")
            results, checks = run_bounds(args.n, args.m, args.l)
        elif args.command == "clone":
            results, checks = run_clone(args.n, args.m, args.samples, args.seed, args.tol)
        elif args.command == "estimate":
            results, checks = run_estimate(args.m, args.shots, args.seed, args.tol)
        elif args.command == "concat":
            results, checks = run_concat(args.n, args.m, args.l, args.seed, args.tol)
        else:
            results, checks = run_verify_all(args.seed, args.samples, args.tol)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    config = {k: getattr(args, k, None)
              for k in ("command", "n", "m", "l", "samples", "seed", "tol", "output_format")}
    report = {"config": config, "results": results, "checks": checks}
    _emit(report, args.output_format, args.output)

    elapsed = time.monotonic() - t0
    failed = [c for c in checks if not c["pass"]]
    print(f"{args.command}: {len(checks) - len(failed)}/{len(checks)} checks passed "
          f"in {elapsed:.2f}s", file=sys.stderr)
    for c in failed:
        print(f"  FAIL {c['name']} expected={c['expected']} actual={_fmt(c['actual'])}",
              file=sys.stderr)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
