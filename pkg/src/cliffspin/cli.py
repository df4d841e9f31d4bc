"""Command-line front end.

    cliffspin build   --n 8
    cliffspin verify  --n 1..13          (or --input realization.json)
    cliffspin gilbert --n 14 --trials 50
    cliffspin hardy   --suite rbc --n 2 --d 1 --N 64

Exit codes: 0 all checks pass, 1 a check failed, 2 unsupported input,
3 internal error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from . import clifford, gilbert, hardy
from .errors import CliffspinError, MaxDimensionExceeded, ObstructedDimension, UnsupportedDimension

log = logging.getLogger("cliffspin")

EXIT_OK, EXIT_FAIL, EXIT_UNSUPPORTED, EXIT_INTERNAL = 0, 1, 2, 3
SUITES = ("idempotency", "involution", "rbc", "crb", "dirac", "kernels", "schwartz")
TOLERANCES = {
    "idempotency": 1e-12,
    "involution": 1e-12,
    "rbc": 1e-10,
    "crb": 1e-10,
    "dirac": 1e-10,
    "kernels": 1e-3,
    "schwartz": 1e-6,
}
# exact algebra-dimension rank check is run up to this n
EXACT_SPAN_MAX_N = 8


class UsageError(Exception):
    pass


def parse_n(text: str) -> list[int]:
    """``"8"`` -> [8]; ``"1..13"`` -> [1, ..., 13]; ``"2,4,8"`` -> [2, 4, 8]."""
    out = []
    try:
        for part in text.split(","):
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad --n value {text!r}") from None
    return out


def resolve_n(values: list[int], k: int | None) -> list[int]:
    """With ``--k``, each ``--n`` value is the residue m and n = 8k + m."""
    if k is None:
        return values
    if k < 0:
        raise UnsupportedDimension(k, "--k must be non-negative")
    bad = [m for m in values if not 0 <= m <= 7]
    if bad:
        raise UnsupportedDimension(bad[0], "with --k, --n is the residue 0..7")
    return [8 * k + m for m in values]


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cliffspin", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", type=Path, help="write the report here instead of stdout")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("-v", "--verbose", action="store_true")

    b = sub.add_parser("build", help="emit the generator matrices of Cl_n")
    b.add_argument("--n", type=parse_n, required=True)
    b.add_argument("--k", type=int)
    common(b)

    v = sub.add_parser("verify", help="check relations, volume element and dimensions")
    v.add_argument("--n", type=parse_n)
    v.add_argument("--k", type=int)
    v.add_argument("--input", type=Path, help="verify a realization JSON file instead of building")
    common(v)

    g = sub.add_parser("gilbert", help="witness check, or obstruction plus spinning evidence")
    g.add_argument("--n", type=parse_n, required=True)
    g.add_argument("--k", type=int)
    g.add_argument("--trials", type=int, default=50)
    g.add_argument("--component", choices=("+", "-", "both"), default="+")
    common(g)

    h = sub.add_parser("hardy", help="numeric multiplier and kernel checks")
    h.add_argument("--suite", choices=SUITES + ("all",), default="all")
    h.add_argument("--n", type=int)
    h.add_argument("--d", type=int)
    h.add_argument("--N", type=int, default=64)
    h.add_argument("--L", type=float)
    h.add_argument("--trials", type=int, default=3)
    h.add_argument("--t", type=float, default=0.5)
    common(h)
    return p


# subcommands


def cmd_build(args) -> tuple[dict, bool]:
    ns = resolve_n(args.n, args.k)
    if len(ns) != 1:
        raise UsageError("build takes a single n")
    r = clifford.build(ns[0])
    return {"realization": r.to_json()}, True


def _verify_one(r: clifford.CliffordRealization) -> dict:
    rel = clifford.verify_relations(r)
    dich = clifford.dichotomy_check(r)
    expected = clifford.spinor_dim(r.n)
    accounted = clifford.clifford_algebra_dim_from_spinors(r.n)
    out = {
        "n": r.n,
        "k": r.k,
        "m": r.m,
        "components": list(r.components),
        "spinor_dim": r.spinor_dim,
        "spinor_dim_ok": r.spinor_dim == expected,
        "relations": rel.to_json(),
        "volume_element": dich.to_json(),
        "dimension_accounting": {"value": accounted, "expected": 2**r.n, "ok": accounted == 2**r.n},
    }
    ok = rel.passed and dich.passed and out["spinor_dim_ok"] and accounted == 2**r.n
    if r.n <= EXACT_SPAN_MAX_N and rel.passed:
        spans = [clifford.algebra_dimension(r.component(t)) for t in r.components]
        out["exact_span"] = {"per_component": spans, "total": sum(spans), "ok": sum(spans) == 2**r.n}
        ok = ok and sum(spans) == 2**r.n
    out["pass"] = ok
    return out


def cmd_verify(args) -> tuple[dict, bool]:
    if args.input is not None:
        try:
            r = clifford.CliffordRealization.from_json(json.loads(args.input.read_text()))
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"cannot read realization: {exc}") from exc
        results = [_verify_one(r)]
    else:
        if args.n is None:
            raise UsageError("verify needs --n or --input")
        results = [_verify_one(clifford.build(n)) for n in resolve_n(args.n, args.k)]
    return {"results": results}, all(x["pass"] for x in results)


def _gilbert_one(n: int, args) -> dict:
    k, m = clifford.split(n)
    if n < 2:
        raise UnsupportedDimension(n, "the boundary R^(n-1) is trivial for n < 2")
    if m in gilbert.OBSTRUCTED_RESIDUES:
        obs = gilbert.dim_obstruction(n)
        r = clifford.build(n)
        tags = list(r.components) if args.component == "both" else [args.component if r.semisimple_pair else "single"]
        evidence = [
            gilbert.spinning_evidence(n, args.trials, seed=args.seed, component="+" if t == "single" else t).to_json()
            for t in tags
        ]
        ok = obs.failed and all(e["consistent_with_obstruction"] for e in evidence)
        return {"n": n, "kind": "obstruction", "obstruction": obs.to_json(), "evidence": evidence, "pass": ok}
    r = clifford.build(n)
    tags = ["+", "-"] if (r.semisimple_pair and args.component == "both") else [args.component]
    reports = [gilbert.check_gilbert(r, gilbert.standard_witness(n, t, r)).to_json() for t in tags]
    return {"n": n, "kind": "witness", "reports": reports, "pass": all(x["verdict"] for x in reports)}


def cmd_gilbert(args) -> tuple[dict, bool]:
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    results = [_gilbert_one(n, args) for n in resolve_n(args.n, args.k)]
    return {"results": results}, all(x["pass"] for x in results)


def hermite_gaussian(points: np.ndarray) -> np.ndarray:
    """H_4(x_1) exp(-|x|^2): Gaussian-localized with vanishing moments of order < 4 in x_1."""
    x1 = points[:, 0]
    h4 = 16 * x1**4 - 48 * x1**2 + 12
    return h4 * np.exp(-np.sum(points**2, axis=1))


def _hardy_reports(suite: str, n: int, d: int, N: int, L: float | None, trials: int, t: float, seed: int) -> list:
    rng = np.random.default_rng(seed)
    tol = TOLERANCES[suite]
    if suite == "schwartz":
        rep = hardy.schwartz_normalization(n)
        oracle = hardy.riesz_at_origin(n, rep.c, 1, tol=rep.tol / 10, route="parametric")
        others = max((abs(v) for v in rep.riesz_values[1:]), default=0.0)
        extra = rep.to_json() | {"oracle_riesz_1": oracle, "max_other_riesz": others, "others_ok": others < 1e-8}
        residual = abs(oracle - 1)
        if others >= 1e-8:
            residual = max(residual, others)
        return [hardy.HardyReport("schwartz", n, n - 1, 0, residual, tol, extra)]
    if suite == "kernels":
        grid = hardy.Grid(d, N, 16.0 if L is None else L)
        v = np.linspace(1, -1, hardy.generator_arrays(n)[0].shape[0]) + 0.25
        f = hardy.SpinorField(grid, n, np.outer(hermite_gaussian(grid.points()), v))
        res = hardy.convolution_crosscheck(f, t)
        return [hardy.HardyReport("kernels", n, d, N, res, tol, {"L": grid.L, "t": t})]
    grid = hardy.Grid(d, N, 2 * math.pi if L is None else L)
    out = []
    witness = gilbert.standard_witness(n) if suite in ("rbc", "crb") else None
    for trial in range(trials):
        f = hardy.random_band_limited(grid, n, rng)
        extra = {"trial": trial}
        if suite == "idempotency":
            res = hardy.idempotency_residual(f)
        elif suite == "involution":
            res = hardy.involution_residual(f)
        elif suite == "rbc":
            res = hardy.rbc_identity(f, witness)
        elif suite == "crb":
            res = hardy.crb_identity(f, witness, t)
        else:
            rep = hardy.dirac_residual(f, t0=t)
            res = rep.spectral_residual
            extra |= rep.to_json() | {"min_order_required": 1.8}
            if rep.min_order < 1.8:
                res = max(res, 1.0)
        out.append(hardy.HardyReport(suite, n, d, N, res, tol, extra))
    return out


def cmd_hardy(args) -> tuple[dict, bool]:
    n, d = args.n, args.d
    if n is None and d is None:
        n, d = 2, 1
    elif n is None:
        n = d + 1
    elif d is None:
        d = n - 1
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    suites = SUITES if args.suite == "all" else (args.suite,)
    reports = []
    for s in suites:
        if s == "schwartz":
            reports += _hardy_reports(s, n, d, args.N, args.L, args.trials, args.t, args.seed)
        elif s in ("rbc", "crb") and gilbert.split(n)[1] in gilbert.OBSTRUCTED_RESIDUES:
            raise UnsupportedDimension(n, "no witness exists for this n")
        else:
            reports += _hardy_reports(s, n, d, args.N, args.L, args.trials, args.t, args.seed)
    rows = [r.to_json() for r in reports]
    return {"reports": rows}, all(r["pass"] for r in rows)


COMMANDS = {"build": cmd_build, "verify": cmd_verify, "gilbert": cmd_gilbert, "hardy": cmd_hardy}


def _csv(reports: list[dict]) -> str:
    buf = io.StringIO()
    cols = ["test", "n", "d", "N", "residual", "tolerance", "pass"]
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in reports:
        w.writerow([r[c] for c in cols])
    return buf.getvalue()


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.format == "csv" and args.command != "hardy":
            raise UsageError("--format csv applies to hardy suites only")
        body, ok = COMMANDS[args.command](args)
    except (UsageError, UnsupportedDimension, ObstructedDimension, MaxDimensionExceeded) as exc:
        print(f"cliffspin: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except CliffspinError as exc:
        print(f"cliffspin: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception:
        log.exception("internal error")
        return EXIT_INTERNAL
    if args.format == "csv":
        text = _csv(body["reports"])
    else:
        report = {
            "command": "cliffspin " + " ".join(argv),
            "seed": args.seed,
            "version": __version__,
            "pass": ok,
        }
        report.update(body)
        text = json.dumps(report, indent=2) + "\n"
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
