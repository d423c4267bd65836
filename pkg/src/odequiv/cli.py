"""Command line interface.

Subcommands: analyze, orbit, linearizable, invariants, equiv,
pushforward.  Output is text or JSON; every verdict-relevant number is
serialized as an exact fraction, decimal fields are annotated
approximations only.  Exit codes: 0 success/pass, 1 necessary-condition
failure, 2 inconclusive or case mismatch, 3 input error.
"""

import argparse
import json
import random
import sys

from .rat import Q, rat
from . import expr as ex
from . import invariants as inv
from . import isotropy
from . import transform as tr
from . import equivalence as eqv
from .expr import ExprError, EvalError


class InputError(Exception):
    """Bad file, point, or flag; reported with exit code 3."""


def _q_str(v):
    return str(v)


def _parse_point(s):
    try:
        a, b = s.split(",")
        return (Q(a), Q(b))
    except (ValueError, ZeroDivisionError):
        raise InputError("bad point %r, expected 'x,y' rationals" % s)


def _load_file(path, need_map=False):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise InputError("cannot read %s: %s" % (path, err))
    try:
        coeffs, mp = ex.parse_equation_file(text)
    except ExprError as err:
        raise InputError("%s: %s" % (path, err))
    if need_map and mp is None:
        raise InputError("%s: a [map] section is required" % path)
    return coeffs, mp


def _scaled(sr, f3):
    return {"r": _q_str(sr.r), "e": sr.e,
            "approx": sr.approx(f3) if f3 else 0.0}


def _tensor(t):
    return {"signature": [t.r, t.s, t.w],
            "components": {"%d,%d,%d" % k: _q_str(v)
                           for k, v in sorted(t.comps.items())}}


def _emit(report, fmt, out=None):
    if out is None:
        out = sys.stdout
    if fmt == "json":
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
        return
    _emit_text(report, out, 0)


def _emit_text(node, out, depth):
    pad = "  " * depth
    if isinstance(node, dict):
        for k in sorted(node):
            v = node[k]
            if isinstance(v, (dict, list)):
                out.write("%s%s:\n" % (pad, k))
                _emit_text(v, out, depth + 1)
            else:
                out.write("%s%s: %s\n" % (pad, k, v))
    elif isinstance(node, list):
        for v in node:
            if isinstance(v, (dict, list)):
                _emit_text(v, out, depth + 1)
            else:
                out.write("%s- %s\n" % (pad, v))
    else:
        out.write("%s%s\n" % (pad, node))


def _f_report(theta):
    f1, f2, f3 = inv.f_invariants(theta)
    d = {"F1": _q_str(f1), "F2": _q_str(f2)}
    if f3 is not None:
        d["F3"] = _q_str(f3)
    return d, (f1, f2, f3)


def cmd_analyze(args):
    coeffs, _ = _load_file(args.file)
    p = _parse_point(args.point)
    k = args.order
    if k < 2:
        raise InputError("analyze needs --order at least 2")
    theta = ex.section_jet(coeffs, p, k)
    report = {"command": "analyze", "point": [_q_str(p[0]), _q_str(p[1])],
              "order": k, "warnings": []}
    fvals, (f1, f2, f3) = _f_report(theta)
    report["relative_invariants"] = fvals
    report["linearizable_at_point"] = not (f1 or f2)
    report["orbit"] = repr(isotropy.classify_orbit(theta.truncate(min(k, 3))))
    report["omega2"] = _tensor(inv.omega2(theta))
    a2, b2 = inv.derived2(theta)
    report["alpha2"] = _tensor(a2)
    report["beta2"] = _tensor(b2)
    if k >= 3:
        if f1 or f2:
            report["omega3"] = _tensor(inv.omega3(theta))
            a3, b3, nu = inv.derived3(theta)
            report["alpha3"] = _tensor(a3)
            report["beta3"] = _tensor(b3)
            report["nu"] = _tensor(nu)
        else:
            report["warnings"].append(
                "omega3 undefined on the linearizable stratum")
        if not f3:
            report["warnings"].append("degenerate 3-jet: F3 = 0")
    if k >= 4 and f3:
        scal = inv.scalar_invariants(theta)
        report["scalar_invariants"] = {
            "I%d" % i: _scaled(s, f3) for i, s in enumerate(scal, start=1)}
    _emit(report, args.format)
    return 0


def cmd_orbit(args):
    coeffs, _ = _load_file(args.file)
    p = _parse_point(args.point)
    k = args.order
    if k not in (2, 3):
        raise InputError("orbit classification needs --order 2 or 3")
    theta = ex.section_jet(coeffs, p, k)
    label = isotropy.classify_orbit(theta)
    report = {"command": "orbit", "point": [_q_str(p[0]), _q_str(p[1])],
              "order": k, "orbit": label.name}
    if label.reason:
        report["reason"] = label.reason
    _emit(report, args.format)
    return 0


def cmd_linearizable(args):
    coeffs, _ = _load_file(args.file)
    p = _parse_point(args.point)
    rng = random.Random(args.seed)
    pts = [p]
    for _ in range(8):
        pts.append((p[0] + Q(rng.randint(-9, 9), 10),
                    p[1] + Q(rng.randint(-9, 9), 10)))
    results = []
    ok = True
    for q in pts:
        try:
            theta = ex.section_jet(coeffs, q, 2)
        except EvalError:
            results.append({"point": [_q_str(q[0]), _q_str(q[1])],
                            "status": "undefined"})
            continue
        f1, f2, _ = inv.f_invariants(theta)
        flat = not (f1 or f2)
        ok = ok and flat
        results.append({"point": [_q_str(q[0]), _q_str(q[1])],
                        "F1": _q_str(f1), "F2": _q_str(f2),
                        "vanishes": flat})
    report = {"command": "linearizable", "samples": results,
              "linearizable_at_samples": ok}
    _emit(report, args.format)
    return 0


def cmd_invariants(args):
    coeffs, _ = _load_file(args.file)
    p = _parse_point(args.point)
    try:
        theta5 = ex.section_jet(coeffs, p, 5)
        invs, derivs, f3 = inv.lie_derivatives_from_jet(theta5)
    except (EvalError, inv.DegenerateJetError) as err:
        raise InputError(str(err))
    if not f3:
        raise InputError("F3 vanishes at the point; no scalar invariants")
    report = {"command": "invariants",
              "point": [_q_str(p[0]), _q_str(p[1])],
              "F3": _q_str(f3),
              "scalar_invariants": {"I%d" % k: _scaled(invs[k - 1], f3)
                                    for k in range(1, 7)},
              "lie_derivatives": {"xi%d(I%d)" % (j, k):
                                  _scaled(derivs[(j, k)], f3)
                                  for j in (1, 2) for k in range(1, 7)}}
    _emit(report, args.format)
    return 0


def cmd_equiv(args):
    coeffs1, mp1 = _load_file(args.file1)
    coeffs2, mp2 = _load_file(args.file2)

    def build(coeffs, mp):
        eq = eqv.ExprEquation(coeffs)
        if mp is not None:
            eq = eqv.PushforwardEquation(eq, tr.PointMap(*mp))
        return eq

    p1 = _parse_point(args.point1)
    p2 = _parse_point(args.point2)
    try:
        grid = eqv.Grid.parse(args.grid)
    except ValueError as err:
        raise InputError(str(err))
    try:
        rep = eqv.check_equivalence(build(coeffs1, mp1), p1,
                                    build(coeffs2, mp2), p2, grid)
    except (eqv.NonRegularPointError, ValueError) as err:
        raise InputError(str(err))
    report = {"command": "equiv",
              "verdict": rep.verdict,
              "case": [rep.sig1.case, rep.sig2.case],
              "flags": list(rep.flags),
              "notes": list(rep.notes)}
    if rep.reason:
        report["reason"] = rep.reason
    for tag, sig in (("first", rep.sig1), ("second", rep.sig2)):
        report[tag] = {
            "case": sig.case,
            "generators": [eqv.tag_name(t) for t in sig.generators],
            "invariants": {eqv.tag_name(t): _q_str(sig.keys[t])
                           for t in eqv.TAGS}}
    _emit(report, args.format)
    if rep.verdict == eqv.PASS:
        return 2 if rep.inconclusive else 0
    if rep.verdict == eqv.FAIL:
        return 1
    return 2


def cmd_pushforward(args):
    coeffs, mp = _load_file(args.file, need_map=True)
    p = _parse_point(args.point)
    k = args.order
    pmap = tr.PointMap(*mp)
    try:
        fjet = pmap.jet(p, k + 2)
        theta = ex.section_jet(coeffs, p, k)
        pushed = tr.lift_section_jet(fjet, theta)
        ginv = tr.invert_map_jet(fjet)
    except (tr.SingularMapError, EvalError) as err:
        raise InputError(str(err))
    report = {"command": "pushforward",
              "point": [_q_str(p[0]), _q_str(p[1])],
              "image": [_q_str(pushed.base[0]), _q_str(pushed.base[1])],
              "order": k,
              "jet": {"%d,%d,%d" % key: _q_str(v)
                      for key, v in sorted(pushed.u.items())},
              "inverse_jet": {
                  "f%d" % i: {"%d,%d" % mn: _q_str(c)
                              for mn, c in sorted(g.coeffs.items())}
                  for i, g in enumerate((ginv.f1, ginv.f2), start=1)}}
    if args.verify:
        ident = tr.identity_map_jet(p, fjet.order)
        ok = tr.compose_map_jets(ginv, fjet) == ident
        report["round_trip_exact"] = ok
        if not ok:
            report.setdefault("warnings", []).append(
                "inverse round trip failed")
    _emit(report, args.format)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="odequiv",
        description="Exact differential invariants of second-order ODEs "
                    "under point transformations.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(sp, point=True, order=None):
        sp.add_argument("--format", choices=("json", "text"), default="text")
        sp.add_argument("--seed", type=int, default=0)
        if point:
            sp.add_argument("--point", default="0,0",
                            help="rational point 'x,y'")
        if order is not None:
            sp.add_argument("--order", type=int, default=order)

    sp = sub.add_parser("analyze", help="full invariant dossier at a point")
    sp.add_argument("file")
    common(sp, order=3)
    sp.set_defaults(fn=cmd_analyze)

    sp = sub.add_parser("orbit", help="orbit of the 2- or 3-jet")
    sp.add_argument("file")
    common(sp, order=3)
    sp.set_defaults(fn=cmd_orbit)

    sp = sub.add_parser("linearizable",
                        help="test F1 = F2 = 0 at sampled points")
    sp.add_argument("file")
    common(sp)
    sp.set_defaults(fn=cmd_linearizable)

    sp = sub.add_parser("invariants",
                        help="scalar invariants and Lie derivatives")
    sp.add_argument("file")
    common(sp)
    sp.set_defaults(fn=cmd_invariants)

    sp = sub.add_parser("equiv", help="necessary equivalence conditions")
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp.add_argument("--point1", default="0,0")
    sp.add_argument("--point2", default="0,0")
    sp.add_argument("--grid", default="-1,-1:1,1:3,3",
                    help="sample grid 'x0,y0:x1,y1:nx,ny'")
    common(sp, point=False)
    sp.set_defaults(fn=cmd_equiv)

    sp = sub.add_parser("pushforward",
                        help="transformed jet under the file's [map]")
    sp.add_argument("file")
    sp.add_argument("--verify", action="store_true",
                    help="check the inverse composition exactly")
    common(sp, order=3)
    sp.set_defaults(fn=cmd_pushforward)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as err:
        sys.stderr.write("error: %s\n" % err)
        return 3


if __name__ == "__main__":
    sys.exit(main())
