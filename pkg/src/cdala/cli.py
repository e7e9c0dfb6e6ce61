"""Command line front end: every subcommand builds a Report and maps errors to exit codes.

Exit codes: 0 all checks pass, 1 some check failed, 2 usage error,
3 expression syntax error, 4 other library error, 5 window/data/budget
limits, 6 degree or series mismatch.
"""

import argparse
import json
import re
import sys

from . import __version__
from .cherednik import CherParams
from .errors import CdalaError, NotStabilized
from .glinf import check_hom_windowed, monodromy_check
from .highestweight import (TensorLabels, WeightData, integrability_check, qfin_check,
                            weight_from_tensor)
from .matlie import ExtElem, MatElem, mat_bracket, triangular_project, uce_bracket
from .parser import ParseContext, format_elem, parse, parse_scalar, parse_scalar_list
from .poly import Poly
from .report import Report
from .structure import (ad_eigen_table, block_pattern_ok, c_embedding, check_presentation,
                        loop_iso, simple_root_matrix, toroidal_iso)
from .weyl import (cf, coinvariant_dim, reduced_ring, schur_weyl_dim, sign, verify_swflk,
                   weyl_lower_bound)

EXIT_FAIL, EXIT_USAGE = 1, 2


class UsageError(Exception):
    pass


def _params(args) -> CherParams:
    d = args.d
    t = parse_scalar(args.t, d) if args.t else 1
    c = parse_scalar_list(args.c, d) if args.c else None
    return CherParams(d, t, c)


_UNIT = re.compile(r"E\[\s*(\d+)\s*,\s*(\d+)\s*\]")


def _infer_n(args) -> int:
    """--n if given, else the largest index among the E[i,j] in the expressions."""
    if args.n:
        return args.n
    idx = [int(g) for attr in ("x", "y") for m in _UNIT.finditer(getattr(args, attr, "") or "")
           for g in m.groups()]
    return max(idx, default=None)


def _ctx(args, ring: str = None) -> ParseContext:
    ring = ring or args.ring
    params = _params(args) if ring in ("cher", "trig") else None
    return ParseContext(ring, args.d, _infer_n(args), params)


def _matrix(x, n: int) -> MatElem:
    """Matrices pass through; a ring element becomes a scalar matrix of size n."""
    if isinstance(x, MatElem):
        return x
    if not n:
        raise UsageError("this command needs matrix input (E[i,j]) or --n")
    return MatElem.diag(n, x)


def _base_params(args, *names) -> dict:
    return {k: getattr(args, k) for k in names if getattr(args, k, None) is not None}


# ------------------------------------------------------------------ commands

def cmd_bracket(args) -> Report:
    ctx = _ctx(args)
    x, y = parse(args.x, ctx), parse(args.y, ctx)
    rep = Report("bracket", _base_params(args, "ring", "n", "d", "t", "c"),
                 {"x": format_elem(x), "y": format_elem(y)})
    if isinstance(x, MatElem) != isinstance(y, MatElem):
        raise UsageError("both operands must be matrices or both ring elements")
    br = mat_bracket(x, y) if isinstance(x, MatElem) else x * y - y * x
    rev = mat_bracket(y, x) if isinstance(x, MatElem) else y * x - x * y
    rep.outputs["bracket"] = format_elem(br)
    rep.add("antisymmetry", br == -rev)
    return rep


def cmd_uce(args) -> Report:
    if args.ring not in ("A", "B", "C"):
        raise UsageError("uce-bracket needs --ring A, B or C")
    ctx = _ctx(args)
    x, y = parse(args.x, ctx), parse(args.y, ctx)
    if not (isinstance(x, MatElem) and isinstance(y, MatElem)):
        raise UsageError("uce-bracket needs matrix operands")
    X, Y = ExtElem(x, d=args.d), ExtElem(y, d=args.d)
    direct = uce_bracket(X, Y, "direct")
    morita = uce_bracket(X, Y, "morita")
    rep = Report("uce-bracket", _base_params(args, "ring", "n", "d"),
                 {"x": format_elem(x), "y": format_elem(y)})
    rep.outputs["matrix"] = str(direct.mat)
    rep.outputs["central"] = str(direct.central)
    rep.add("cocycle routes agree", direct.central == morita.central,
            direct=str(direct.central), morita=str(morita.central))
    return rep


def cmd_iso(args) -> Report:
    ctx = _ctx(args)
    x = parse(args.x, ctx)
    if not isinstance(x, MatElem):
        raise UsageError("iso needs a matrix expression")
    n, d = x.n, args.d
    rep = Report("iso", _base_params(args, "which", "ring", "n", "d"), {"x": format_elem(x)})
    if args.which == "loop":
        y = loop_iso(x, "fwd", d=d)
        back = loop_iso(y, "inv", n, d)
        rep.add("roundtrip", back == MatElem(n, {k: v.as_variant("LoopA") for k, v in x.entries.items()}))
        if args.ring == "PolyB":
            rep.add("block pattern", block_pattern_ok(y, n))
    elif args.which == "toroidal":
        y = toroidal_iso(x, "fwd", d=d)
        back = toroidal_iso(y, "inv", n, d, ring=args.ring)
        rep.add("roundtrip", back == x)
    elif args.which == "c":
        if args.ring != "C":
            raise UsageError("the C embedding needs --ring C")
        y = c_embedding(x, d)
    else:
        raise UsageError(f"unknown iso {args.which!r}")
    rep.outputs["image"] = str(y)
    rep.outputs["size"] = y.n
    return rep


def cmd_roots(args) -> Report:
    n, d = args.n, args.d
    if not n or n < 2:
        raise UsageError("roots needs --n >= 2")
    data = simple_root_matrix(n, d)
    table = ad_eigen_table(n, d, args.kmax)
    rep = Report("roots", {"n": n, "d": d, "kmax": args.kmax})
    rep.outputs.update({
        "simple_roots": [[int(v) for v in row] for row in data.matrix],
        "det": str(data.det),
        "corrected_det": str(data.corrected_det),
        "eigen_entries": len(table),
        "literal_eigen_mismatches": len(table.literal_mismatches),
    })
    rep.add("det is +-1", data.unimodular, det=str(data.det))
    rep.add("delta identity", data.delta_identity)
    rep.add("eigenvalue table", table.ok, mismatches=len(table.mismatches))
    rep.add("corrected roots span real roots", data.lattice_ok)
    return rep


def cmd_decompose(args) -> Report:
    ctx = _ctx(args)
    x = parse(args.x, ctx)
    if not isinstance(x, MatElem):
        raise UsageError("decompose needs a matrix expression")
    neg, mid, pos = triangular_project(x, args.td)
    rep = Report("decompose", _base_params(args, "td", "ring", "n", "d"), {"x": format_elem(x)})
    rep.outputs.update({"neg": str(neg), "mid": str(mid), "pos": str(pos)})
    rep.add("parts sum to input", neg + mid + pos == x)
    return rep


def cmd_verify(args) -> Report:
    if not args.n:
        raise UsageError("verify needs --n")
    rep = check_presentation(args.which, args.n, args.d, args.rmax, args.samples, args.seed, args.literal)
    rep.command = "verify"
    rep.params = {"which": args.which, "n": args.n, "d": args.d, "rmax": args.rmax,
                  "samples": args.samples, "seed": args.seed, "literal": args.literal}
    return rep


def _window(text: str) -> tuple:
    try:
        lo, hi = (int(p) for p in text.split(":"))
    except ValueError:
        raise UsageError(f"window must look like LO:HI, got {text!r}")
    if lo >= hi:
        raise UsageError("window needs LO < HI")
    return lo, hi


def cmd_glinf(args) -> Report:
    ring = args.ring if args.ring in ("cher", "trig") else "trig"
    ctx = _ctx(args, ring)
    x, y = parse(args.x, ctx), parse(args.y, ctx)
    x, y = _matrix(x, args.n), _matrix(y, args.n)
    win = _window(args.window)
    a = parse_scalar(args.a, args.d) if args.a else 0
    rep = Report("glinf", {"ring": ring, "n": x.n, "d": args.d, "window": list(win), "m": args.m,
                           "a": args.a or "0"}, {"x": format_elem(x), "y": format_elem(y)})
    rep.add("iota homomorphism", check_hom_windowed(x, y, "iota", win))
    rep.add("phi_a^[m] homomorphism", check_hom_windowed(x, y, "phi_am", win, a, args.m))
    rep.add("monodromy x", monodromy_check(x, win))
    rep.add("monodromy y", monodromy_check(y, win))
    return rep


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as err:
        raise UsageError(f"cannot read {path}: {err}")


def cmd_qfin(args) -> Report:
    data = _load_json(args.input)
    if "factors" in data:
        n, d = data.get("n", args.n), data.get("d", args.d)
        if not n:
            raise UsageError("tensor labels need n (in the file or --n)")
        N = data.get("N", 2 * args.order + 3)
        lam = weight_from_tensor(TensorLabels.from_dict(data, d), n, d, N)
    else:
        lam = WeightData.from_dict(data)
    N = lam.R_max
    rep = Report("qfin", {"order": args.order, "N": N}, {"n": lam.n, "d": lam.d, "R_max": lam.R_max})
    res = qfin_check(lam, N, args.order)
    for (i, l), cert in sorted(res.certificates.items()):
        rep.add(f"quasi-polynomial i={i} l={l}", bool(cert), **cert.to_dict())
    rep.outputs["quasi_finite_up_to_order"] = args.order if res else None
    return rep


def _lambda_from_json(data: dict) -> tuple:
    n, d = int(data["n"]), int(data.get("d", 1))
    lam = {}
    for e in data.get("values", []):
        lam[(int(e["i"]), int(e["j"]), int(e["r"]))] = parse_scalar(str(e["value"]), d)
    P = None
    if "P" in data:
        P = {}
        for e in data["P"]:
            P[(int(e["i"]), int(e["j"]))] = Poly(d, [parse_scalar(str(c), d) for c in e["coeffs"]])
    return n, d, lam, P


def cmd_integrable(args) -> Report:
    n, d, lam, P = _lambda_from_json(_load_json(args.input))
    rep = Report("integrable", {"which": args.which, "order": args.order}, {"n": n, "d": d})
    res = integrability_check(args.which, lam, P, args.order, n, d)
    rep.outputs["P"] = res.to_dict()["P"]
    rep.add("Drinfeld polynomial criterion", True, order=args.order)
    return rep


def cmd_weyl(args) -> Report:
    act = args.action
    if act == "dim":
        rep = Report("weyl dim", {"n": args.n, "l": args.l, "k": args.k})
        val = schur_weyl_dim(args.n, args.l, cf(args.l, args.k) * sign(args.l))
        rep.outputs["dim"] = val
        rep.add("exterior power identity", verify_swflk(args.n, args.l, args.k))
        return rep
    if act == "bound":
        rep = Report("weyl bound", {"n": args.n, "d": args.d, "l": args.l, "which": args.which})
        lb = weyl_lower_bound(args.n, args.d, args.l, args.which)
        rep.outputs["bound"] = lb.value
        rep.add("Schur-Weyl dimension of the quotient", lb.agrees, schur_weyl=lb.schur_weyl)
        return rep
    if act == "coinv":
        budget = args.budget if args.budget else (10 ** 7 if args.long else 200000)
        rep = Report("weyl coinv", {"l": args.l, "d": args.d, "degree_cap": args.degree_cap,
                                    "group": args.group, "budget": budget})
        try:
            q = coinvariant_dim(args.l, args.d, args.degree_cap, args.group, budget)
        except NotStabilized as err:
            q = err.partial
            rep.outputs.update({"dim_lower_bound": q.dim, "hilbert": q.hilbert})
            rep.add("stabilized", "skip", reason=str(err))
            return rep
        rep.outputs.update({"dim": q.dim, "hilbert": q.hilbert})
        rep.add("stabilized", q.stabilized)
        return rep
    raise UsageError(f"unknown weyl action {act!r}")


def cmd_reduce_ring(args) -> Report:
    try:
        weights = [int(w) for w in args.weights.split(",")]
    except ValueError:
        raise UsageError("--weights takes comma-separated integers")
    rep = Report("reduce-ring", {"d": args.d, "weights": weights, "degree_cap": args.degree_cap})
    rr = reduced_ring(weights, args.d, (), args.degree_cap)
    rep.outputs.update({"dim": rr.dim, "basis": [list(m) for m in rr.basis]})
    rep.add("finite dimensional", rr.stabilized)
    return rep


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=None, help="matrix size")
    common.add_argument("--d", type=int, default=1, help="order of the cyclic group")
    common.add_argument("--t", default=None, help="Cherednik parameter t (exact scalar)")
    common.add_argument("--c", default=None, help="Cherednik parameters c_1..c_{d-1}, comma separated")
    common.add_argument("--json", action="store_true", help="emit the JSON report")

    p = argparse.ArgumentParser(prog="cdala", description="Cyclotomic double affine Lie algebra toolkit.")
    p.add_argument("--version", action="version", version=f"cdala {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("bracket", parents=[common], help="commutator of two expressions")
    s.add_argument("x")
    s.add_argument("y")
    s.add_argument("--ring", default="A")
    s.set_defaults(func=cmd_bracket)

    s = sub.add_parser("uce-bracket", parents=[common], help="bracket in the universal central extension")
    s.add_argument("x")
    s.add_argument("y")
    s.add_argument("--ring", default="A")
    s.set_defaults(func=cmd_uce)

    s = sub.add_parser("iso", parents=[common], help="loop, toroidal or C embedding")
    s.add_argument("x")
    s.add_argument("--which", default="toroidal", choices=["loop", "toroidal", "c"])
    s.add_argument("--ring", default="A")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("roots", parents=[common], help="simple roots and ad eigenvalues")
    s.add_argument("--kmax", type=int, default=2)
    s.set_defaults(func=cmd_roots)

    s = sub.add_parser("decompose", parents=[common], help="triangular decomposition")
    s.add_argument("x")
    s.add_argument("--td", default="td1", choices=["td1", "td2", "td3", "td3C"])
    s.add_argument("--ring", default="A")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("verify", parents=[common], help="check a presentation")
    s.add_argument("--which", required=True, choices=["dala", "c", "kl", "kl2"])
    s.add_argument("--rmax", type=int, default=2)
    s.add_argument("--samples", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--literal", action="store_true", help="use the printed tau table unchanged")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("glinf", parents=[common], help="embeddings into gl_infinity")
    s.add_argument("x")
    s.add_argument("y")
    s.add_argument("--ring", default="trig", choices=["trig", "cher"])
    s.add_argument("--window", default="-40:40")
    s.add_argument("--m", type=int, default=1)
    s.add_argument("--a", default=None)
    s.set_defaults(func=cmd_glinf)

    s = sub.add_parser("qfin", parents=[common], help="quasi-finiteness of a weight")
    s.add_argument("--input", required=True)
    s.add_argument("--order", type=int, default=4, help="largest certified recurrence order")
    s.set_defaults(func=cmd_qfin)

    s = sub.add_parser("integrable", parents=[common], help="Drinfeld-polynomial criterion")
    s.add_argument("--input", required=True)
    s.add_argument("--which", default="AB", choices=["AB", "C"])
    s.add_argument("--order", type=int, default=12)
    s.set_defaults(func=cmd_integrable)

    s = sub.add_parser("weyl", parents=[common], help="Weyl-module numbers")
    s.add_argument("action", choices=["dim", "bound", "coinv"])
    s.add_argument("--l", type=int, default=1)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--which", default="smash", choices=["smash", "invariant"])
    s.add_argument("--group", default=None, choices=["symmetric_only", "wreath", "wreath_invariants"])
    s.add_argument("--degree-cap", type=int, default=12)
    s.add_argument("--budget", type=int, default=None)
    s.add_argument("--long", action="store_true", help="allow long computations")
    s.set_defaults(func=cmd_weyl)

    s = sub.add_parser("reduce-ring", parents=[common], help="A / (non-invariant part)")
    s.add_argument("--weights", default="1,-1")
    s.add_argument("--degree-cap", type=int, default=10)
    s.set_defaults(func=cmd_reduce_ring)
    return p


def _emit_error(args, err: Exception, code: int, out):
    print(f"error: {err}", file=sys.stderr)
    if getattr(args, "json", False):
        body = {"command": getattr(args, "command", None),
                "error": {"type": type(err).__name__, "message": str(err), "exit_code": code}}
        where = getattr(err, "where", None)
        if where is not None:
            body["error"]["where"] = list(where)
        pos = getattr(err, "pos", None)
        if pos is not None:
            body["error"]["pos"] = pos
        out.write(json.dumps(body, indent=2) + "\n")


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.command == "weyl" and args.group is None:
        args.group = "symmetric_only" if args.d == 1 else "wreath"
    try:
        rep = args.func(args)
    except UsageError as err:
        _emit_error(args, err, EXIT_USAGE, out)
        return EXIT_USAGE
    except CdalaError as err:
        _emit_error(args, err, err.exit_code, out)
        return err.exit_code
    except ValueError as err:
        _emit_error(args, err, EXIT_USAGE, out)
        return EXIT_USAGE
    out.write(rep.to_json() if args.json else rep.to_text())
    return 0 if rep.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
