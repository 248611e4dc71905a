"""Command-line front end. Every subcommand prints one JSON object

    {"command": ..., "inputs": {...}, "result": ..., "diagnostics": {...}}

Exit status: 0 on success, 1 on a computation error (the JSON then carries
an "error" field), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, is_dataclass
from fractions import Fraction

import numpy as np

from . import correlators, fock, fusion, gromov_witten, qseries, torus, virasoro
from .errors import CFTError


def parse_complex(text: str) -> complex:
    """"a+bi", "a-bi", "bi" or "a", with optional whitespace ("j" also works)."""
    t = re.sub(r"\s+", "", text).replace("i", "j")
    # a bare unit "j" needs an explicit 1 for complex()
    t = re.sub(r"(^|[+-])j", r"\g<1>1j", t)
    try:
        return complex(t)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"cannot parse complex number {text!r}") from exc


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"cannot parse rational {text!r}") from exc


def parse_point(text: str):
    """A rational point stays exact; anything else becomes complex."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        return parse_complex(text)


def _int_list(text: str):
    return [int(x) for x in text.split(",") if x.strip()]


# ---------------------------------------------------------------------------
# JSON encoding


def _fmt_float(x: float):
    if math.isnan(x) or math.isinf(x):
        return str(x)
    return float(f"{x:.17g}")


def to_jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, complex):
        return {"re": _fmt_float(obj.real), "im": _fmt_float(obj.imag)}
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if is_dataclass(obj):
        return to_jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return str(obj)


def _report(command, inputs, result, **diagnostics):
    return {
        "command": command,
        "inputs": inputs,
        "result": result,
        "diagnostics": {k: v for k, v in diagnostics.items() if v is not None},
    }


# ---------------------------------------------------------------------------
# Handlers


def cmd_eta(a):
    return _report("eta", {"tau": a.tau, "tol": a.tol}, qseries.eta_eval(a.tau, a.tol), tolerance=a.tol)


def cmd_theta(a):
    val = qseries.theta_eval(a.index, a.w, a.tau, a.tol)
    return _report("theta", {"index": a.index, "w": a.w, "tau": a.tau, "tol": a.tol}, val, tolerance=a.tol)


def cmd_partition_count(a):
    return _report("partition-count", {"n": a.n}, qseries.partition_count(a.n))


def cmd_z(a):
    inputs = {"model": a.model, "tau": a.tau, "tol": a.tol}
    if a.model == "boson":
        if a.r is None:
            raise CFTError("z boson needs --r")
        inputs["r"] = a.r
        val = torus.z_boson(a.tau, a.r, a.tol)
    elif a.model == "majorana":
        val = torus.z_majorana(a.tau, a.tol)
    elif a.model == "dirac":
        val = torus.z_dirac(a.tau, a.tol)
    else:
        if a.P is None or a.Q is None:
            raise CFTError("z minimal needs --P and --Q")
        inputs.update(P=a.P, Q=a.Q, order=a.order)
        val = torus.z_minimal(a.P, a.Q, a.tau, a.order, a.tol)
    return _report("z", inputs, val, tolerance=a.tol)


def cmd_kac_table(a):
    table = virasoro.kac_table(a.P, a.Q)
    return _report(
        "kac-table",
        {"P": a.P, "Q": a.Q},
        table,
        central_charge=str(virasoro.minimal_central_charge(a.P, a.Q)),
    )


def cmd_gram(a):
    params = virasoro.VirasoroParams(a.c, a.h)
    G = virasoro.gram_matrix(params, a.level)
    return _report(
        "gram",
        {"c": a.c, "h": a.h, "level": a.level},
        {"basis": [list(w) for w in G.basis], "matrix": G.entries, "determinant": G.determinant(), "rank": G.rank()},
    )


def cmd_kac_det(a):
    val = virasoro.kac_determinant_closed(a.m, a.h, a.level)
    return _report("kac-det", {"m": a.m, "h": a.h, "level": a.level}, val)


def cmd_nullvec(a):
    vecs = virasoro.null_vectors(virasoro.VirasoroParams(a.c, a.h), a.level)
    out = [{"coefficients": {" ".join(map(str, w)): x for w, x in v.coeffs.items()}, "text": str(v)} for v in vecs]
    return _report("nullvec", {"c": a.c, "h": a.h, "level": a.level}, out)


def cmd_character(a):
    ch = virasoro.irreducible_character(a.P, a.Q, a.p, a.q, a.order)
    terms = {str(e): c for e, c in ch.terms.items()}
    return _report(
        "character",
        {"P": a.P, "Q": a.Q, "p": a.p, "q": a.q, "order": a.order},
        terms,
        truncation=ch.truncation_order,
    )


def cmd_fock_check(a):
    if a.kind == "boson":
        module = fock.BosonModule(a.alpha)
    else:
        module = fock.FermionModule(a.kind.upper())
    residuals = {}
    for n in range(-a.max_mode, a.max_mode + 1):
        for m in range(-a.max_mode, a.max_mode + 1):
            d = fock.virasoro_defect(n, m, module, a.cutoff)
            residuals[f"{n},{m}"] = len(d.entries)
    ok = all(v == 0 for v in residuals.values())
    return _report(
        "fock-check",
        {"kind": a.kind, "alpha": a.alpha, "cutoff": a.cutoff, "max_mode": a.max_mode},
        {"virasoro_ok": ok, "central_charge": module.central_charge},
        residuals={k: v for k, v in residuals.items() if v},
    )


def cmd_correlator(a):
    kind = a.kind
    pts = [parse_point(x) for x in a.points.split(",")] if a.points else []
    inputs = {"kind": kind, "points": pts}
    if kind == "vertex":
        charges = [parse_rational(x) for x in a.charges.split(",")]
        inputs["charges"] = charges
        val = correlators.vertex_npoint(list(zip(pts, charges)))
    elif kind == "psi":
        val = correlators.psi_npoint(pts)
    elif kind == "sigma4":
        val = correlators.sigma_four_point(*pts)
    else:
        val = correlators.bc_two_point(*pts)
    return _report("correlator", inputs, val)


def cmd_fusion(a):
    if a.kind == "su2":
        l1, l2, l3 = _int_list(a.weights)
        res = fusion.su2_fusion_admissible(l1, l2, l3, a.k)
        return _report("fusion", {"kind": "su2", "k": a.k, "weights": [l1, l2, l3]}, res)
    if a.kind == "verlinde":
        w = _int_list(a.weights or "")
        res = fusion.verlinde_dim(a.k, a.genus, w)
        return _report(
            "fusion",
            {"kind": "verlinde", "k": a.k, "genus": a.genus, "weights": w},
            res.nearest,
            residuals={"raw": res.value, "rounding": res.residual},
        )
    res = fusion.minimal_fuse(a.generator, a.p, a.q, a.P, a.Q)
    return _report(
        "fusion",
        {"kind": "minimal", "generator": a.generator, "p": a.p, "q": a.q, "P": a.P, "Q": a.Q},
        [list(x) for x in res],
    )


def cmd_gw(a):
    return _report("gw", {"dmax": a.dmax}, gromov_witten.km_counts(a.dmax))


def cmd_wdvv(a):
    point = (a.t0, a.t1, a.t2, a.q)
    out = {}
    worst = 0.0
    for idx in gromov_witten.all_index_quadruples():
        r = gromov_witten.wdvv_residual(point, a.dmax, idx)
        out["".join(map(str, idx))] = {"residual": r.residual, "bound": r.bound}
        worst = max(worst, abs(r.residual))
    ok = all(abs(v["residual"]) <= v["bound"] for v in out.values())
    return _report(
        "wdvv",
        {"t0": a.t0, "t1": a.t1, "t2": a.t2, "q": a.q, "dmax": a.dmax},
        {"within_bound": ok, "max_abs_residual": worst},
        residuals=out,
    )


def _modular_residuals(fn, tau):
    z = fn(tau)
    return abs(fn(tau + 1) - z), abs(fn(-1 / tau) - z)


def cmd_check_modular(a):
    taus = [complex(x, y) for x in (-0.4, 0.0, 0.3) for y in (0.8, 1.3)]
    models = {
        "boson_r1": lambda t: torus.z_boson(t, 1.0, a.tol),
        "boson_r2": lambda t: torus.z_boson(t, 2.0, a.tol),
        "majorana": lambda t: torus.z_majorana(t, a.tol),
        "dirac": lambda t: torus.z_dirac(t, a.tol),
        "minimal_2_5": lambda t: torus.z_minimal(2, 5, t, None, a.tol),
        "minimal_3_4": lambda t: torus.z_minimal(3, 4, t, None, a.tol),
    }
    out = {}
    with ThreadPoolExecutor() as pool:
        for name, fn in models.items():
            res = list(pool.map(lambda t: _modular_residuals(fn, t), taus))
            out[name] = {"T": max(r[0] for r in res), "S": max(r[1] for r in res)}
    return _report("check-modular", {"tol": a.tol, "taus": taus}, out, tolerance=a.tol)


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cftkit", description="Exact and numerical 2d CFT computations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("eta")
    s.add_argument("--tau", type=parse_complex, required=True)
    s.add_argument("--tol", type=float, default=1e-14)
    s.set_defaults(func=cmd_eta)

    s = sub.add_parser("theta")
    s.add_argument("--index", type=int, required=True, choices=[1, 2, 3, 4])
    s.add_argument("--w", type=parse_complex, default=0j)
    s.add_argument("--tau", type=parse_complex, required=True)
    s.add_argument("--tol", type=float, default=1e-14)
    s.set_defaults(func=cmd_theta)

    s = sub.add_parser("partition-count")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_partition_count)

    s = sub.add_parser("z")
    s.add_argument("model", choices=["boson", "majorana", "dirac", "minimal"])
    s.add_argument("--tau", type=parse_complex, required=True)
    s.add_argument("--r", type=float)
    s.add_argument("--P", type=int)
    s.add_argument("--Q", type=int)
    s.add_argument("--order", type=int)
    s.add_argument("--tol", type=float, default=1e-12)
    s.set_defaults(func=cmd_z)

    s = sub.add_parser("kac-table")
    s.add_argument("--P", type=int, required=True)
    s.add_argument("--Q", type=int, required=True)
    s.set_defaults(func=cmd_kac_table)

    for name, func in (("gram", cmd_gram), ("nullvec", cmd_nullvec)):
        s = sub.add_parser(name)
        s.add_argument("--c", type=parse_rational, required=True)
        s.add_argument("--h", type=parse_rational, required=True)
        s.add_argument("--level", type=int, required=True)
        s.set_defaults(func=func)

    s = sub.add_parser("kac-det")
    s.add_argument("--m", type=parse_rational, required=True)
    s.add_argument("--h", type=parse_rational, required=True)
    s.add_argument("--level", type=int, required=True)
    s.set_defaults(func=cmd_kac_det)

    s = sub.add_parser("character")
    for flag in ("--P", "--Q", "--p", "--q"):
        s.add_argument(flag, type=int, required=True)
    s.add_argument("--order", type=parse_rational, default=Fraction(10))
    s.set_defaults(func=cmd_character)

    s = sub.add_parser("fock-check")
    s.add_argument("kind", choices=["boson", "ns", "r"])
    s.add_argument("--alpha", type=parse_rational, default=Fraction(0))
    s.add_argument("--cutoff", type=int, default=8)
    s.add_argument("--max-mode", type=int, default=3)
    s.set_defaults(func=cmd_fock_check)

    s = sub.add_parser("correlator")
    s.add_argument("kind", choices=["vertex", "psi", "sigma4", "bc"])
    s.add_argument("--points", required=True, help="comma-separated points, e.g. 0,1,2+1i")
    s.add_argument("--charges", help="comma-separated charges (vertex only)")
    s.set_defaults(func=cmd_correlator)

    s = sub.add_parser("fusion")
    s.add_argument("kind", choices=["su2", "minimal", "verlinde"])
    s.add_argument("--k", type=int)
    s.add_argument("--weights")
    s.add_argument("--genus", type=int, default=0)
    s.add_argument("--generator", choices=["Phi11", "Phi12", "Phi21"])
    for flag in ("--p", "--q", "--P", "--Q"):
        s.add_argument(flag, type=int)
    s.set_defaults(func=cmd_fusion)

    s = sub.add_parser("gw")
    s.add_argument("--dmax", type=int, required=True)
    s.set_defaults(func=cmd_gw)

    s = sub.add_parser("wdvv")
    s.add_argument("--t0", type=float, default=0.1)
    s.add_argument("--t1", type=float, default=0.2)
    s.add_argument("--t2", type=float, default=0.05)
    s.add_argument("--q", type=float, default=0.1)
    s.add_argument("--dmax", type=int, default=5)
    s.set_defaults(func=cmd_wdvv)

    s = sub.add_parser("check-modular")
    s.add_argument("--tol", type=float, default=1e-12)
    s.set_defaults(func=cmd_check_modular)
    return p


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        report = args.func(args)
        code = 0
    except (CFTError, TypeError, ValueError, ZeroDivisionError) as exc:
        inputs = {k: v for k, v in vars(args).items() if k not in ("func", "command")}
        report = {"command": args.command, "inputs": inputs, "error": f"{type(exc).__name__}: {exc}"}
        code = 1
    json.dump(to_jsonable(report), stdout)
    stdout.write("\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
