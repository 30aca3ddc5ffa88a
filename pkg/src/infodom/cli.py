"""Command line entry point: ``dom <verb> <file...> [flags]``.

Exit codes: 0 when every verdict passes, 1 for a checked failure (including
errors raised by the library, reported under their class name), 2 for usage
and parse errors.
"""

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import formats
from .errors import DomainError, ParseError, TooLarge
from .fixpoints import FinitaryInfoSystem, classify, fixed_point_masks, fix_subdomain, targets_top
from .mappings import mapping_axiom_report
from .metrics import build_structure, least_closed_tolerance
from .retractions import is_finitary, retract_system
from .subdomains import SubSystem, sub_embedding
from .valuations import WeightAssignment

SUB_LIMIT = 3


def q(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


class Report:
    def __init__(self):
        self.verdicts = {}
        self.values = {}
        self.witnesses = {}
        self.lines = []

    def verdict(self, name, ok, witness=None):
        self.verdicts[name] = ok
        if witness is not None:
            self.witnesses[name] = witness

    @property
    def ok(self):
        return all(v is not False for v in self.verdicts.values())

    def as_json(self):
        return {"verdicts": self.verdicts, "values": self.values,
                "witnesses": self.witnesses, "ok": self.ok}


def _fmt_bool(v):
    return "n/a" if v is None else ("pass" if v else "FAIL")


def _elem(x):
    return formats.format_element(x)


# verbs -----------------------------------------------------------------------

def _need(path, *exts):
    ext = Path(path).suffix
    if ext not in exts:
        raise ParseError(f"expected a {' or '.join(exts)} file, got {path!r}")
    if not Path(path).exists():
        raise ParseError(f"no such file: {path}")


def _isys_checks(rep, A):
    if isinstance(A, FinitaryInfoSystem):
        try:
            FinitaryInfoSystem.from_relation(A.tokens, A.nabla, A.rel())
            rep.verdict("finitary_axioms", True)
        except DomainError as e:
            rep.verdict("finitary_axioms", False, str(e))
        return
    for k, v in A.axiom_report().items():
        rep.verdict(k, v)


def _amap_checks(rep, f):
    for k, v in mapping_axiom_report(f.src, f.dst, f.rel()).items():
        rep.verdict(k, v)


def cmd_validate(args, rep):
    path = args.files[0]
    _need(path, ".isys", ".amap")
    obj = formats.load_any(path)
    if path.endswith(".isys"):
        _isys_checks(rep, obj)
    else:
        _amap_checks(rep, obj)
    for k, v in rep.verdicts.items():
        rep.lines.append(f"{k}: {_fmt_bool(v)}")


def cmd_elements(args, rep):
    path = args.files[0]
    _need(path, ".isys")
    A = formats.load_isys(path)
    els = A.elements()
    rep.values["count"] = len(els)
    rep.values["elements"] = [_elem(x) for x in els]
    rep.lines += rep.values["elements"]


def _weights(args, D):
    if not args.weights:
        raise ParseError("--weights is required")
    _need(args.weights, ".wts")
    raw = formats.load_wts(args.weights)
    return WeightAssignment(D, raw)


def cmd_dist(args, rep):
    if len(args.files) != 3:
        raise ParseError("usage: dist <isys> --weights <wts> --neg MODE '{x}' '{y}'")
    path, xs, ys = args.files
    _need(path, ".isys")
    A = formats.load_isys(path)
    D = A.domain()
    x, y = formats.parse_element(xs), formats.parse_element(ys)
    for z in (x, y):
        if z not in D:
            raise ParseError(f"{_elem(z)} is not an element")
    s = build_structure(D, _weights(args, D), args.neg or "none")
    d = s.distance(x, y)
    rep.values.update({"l": q(d.l), "u": q(d.u)})
    line = f"l={q(d.l)} u={q(d.u)}"
    if args.approx:
        line += f"  (l~{float(d.l):.6g} u~{float(d.u):.6g})"
    rep.lines.append(line)


def cmd_sub(args, rep):
    path = args.files[0]
    _need(path, ".isys")
    A = formats.load_isys(path)
    S = SubSystem(A)
    P = S.order()
    rep.values["count"] = len(P)
    rep.lines.append(f"Sub size: {len(P)}")
    names = {m: f"s{i}" for i, m in enumerate(P.elements)}
    for m in P.elements:
        fix = sorted(_elem(x) for x in S.subdomain_of(m))
        rep.lines.append(f"{names[m]}: fixed points {' '.join(fix)}")
    # contravariant reading: a larger closure token set is a smaller subdomain
    hasse = [(names[a], names[b]) for a, b in P.hasse()]
    rep.values["hasse"] = hasse
    rep.lines += [f"{a} < {b}" for a, b in hasse]
    if args.embed:
        i, j = sub_embedding(A, S)
        sub_ref = f"sub({Path(path).name})"
        rep.lines.append("# i")
        rep.lines.append(formats.dump_amap(i, Path(path).name, sub_ref).rstrip())
        rep.lines.append("# j")
        rep.lines.append(formats.dump_amap(j, sub_ref, Path(path).name).rstrip())


def cmd_fix(args, rep):
    path = args.files[0]
    _need(path, ".amap")
    f = formats.load_amap(path)
    fix = [f.src.labels(x) for x in fixed_point_masks(f)]
    rep.values["count"] = len(fix)
    rep.values["fixed_points"] = [_elem(x) for x in fix]
    rep.lines += rep.values["fixed_points"]
    if args.dump:
        rep.lines.append(formats.dump_isys(fix_subdomain(f.src, f)).rstrip())


def cmd_fin(args, rep):
    path = args.files[0]
    _need(path, ".amap")
    f = formats.load_amap(path)
    if args.quotient:
        Q = retract_system(f.src, f, projection=args.projection)
        rep.lines.append(formats.dump_isys(Q).rstrip())
        rep.verdict("isomorphic", Q.isomorphic)
        return
    prof = classify(f)
    for k, v in prof.as_dict().items():
        rep.values[k] = v
        rep.lines.append(f"{k}: {v}")
    mode = "projection" if args.projection else "retraction"
    w = is_finitary(f, mode)
    rep.verdict("finitary", w.verdict, [[_elem(f.src.labels(u)), _elem(f.src.labels(v))]
                                        for u, v in w.failures] or None)
    rep.lines.append(f"finitary ({mode}): {'true' if w.verdict else 'false'}")
    src = f.src
    for (u, ww), v in sorted(w.witnesses.items()):
        if u or ww:
            rep.lines.append(f"  {_elem(src.labels(u))} -> {_elem(src.labels(v))} -> "
                             f"{_elem(src.labels(ww))}")
    for u, ww in w.failures:
        rep.lines.append(f"  no witness for {_elem(src.labels(u))} => {_elem(src.labels(ww))}")


def cmd_tol(args, rep):
    path = args.files[0]
    _need(path, ".isys")
    D = formats.load_isys(path).domain()
    T = least_closed_tolerance(D)
    order = {x: i for i, x in enumerate(D.elements)}
    pairs = sorted(T.relation, key=lambda p: (order[p[0]], order[p[1]]))
    rep.values["pairs"] = [[_elem(a), _elem(b)] for a, b in pairs]
    rep.lines += [f"{_elem(a)} ~ {_elem(b)}" for a, b in pairs]


def cmd_demo(args, rep):
    from .exemplars import edomains as ed
    from .exemplars import intervals as iv
    from .exemplars import vertical as vt

    if len(args.files) < 2:
        raise ParseError("usage: demo <E|Eprime|Eg|interval|vertical> <action> ...")
    name, action, *rest = args.files
    if name in ("interval", "intervals"):
        if action != "dist" or len(rest) != 2:
            raise ParseError("usage: demo interval dist '[a,b]' '[c,d]'")
        x, y = iv.parse_interval(rest[0]), iv.parse_interval(rest[1])
        r = iv.rho_interval(x, y)
        p = iv.classical_pm(x, y)
        rep.values.update({"rho_l": q(r.l), "rho_u": q(r.u), "p": q(p)})
        rep.lines.append(f"rho=[{q(r.l)},{q(r.u)}] p={q(p)}")
        return
    if name == "vertical":
        if action != "dist" or len(rest) != 2:
            raise ParseError("usage: demo vertical dist x y")
        try:
            x, y = Fraction(rest[0]), Fraction(rest[1])
        except (ValueError, ZeroDivisionError):
            raise ParseError("points must be rationals") from None
        if not (0 <= x <= 1 and 0 <= y <= 1):
            raise ParseError("points must lie in [0,1]")
        V = vt.vertical_valuations()
        rep.values.update({"u_prime": q(V.u_prime(x, y)), "u_second": q(V.u_second(x, y))})
        rep.lines.append(f"u'={q(V.u_prime(x, y))} u''={q(V.u_second(x, y))}")
        return
    try:
        ed.get_domain(name)
    except ValueError as e:
        raise ParseError(str(e)) from None
    if action == "lawson":
        r = ed.lawson_check(name)
        rep.values["lawson"] = r.holds
        if r.witness is not None:
            rep.witnesses["lawson"] = {"element": r.witness.display, "total": r.total.display}
        rep.lines.append(r.line())
        for a, b in r.indistinguishable:
            rep.lines.append(f"indistinguishable totals: {a.display} {b.display}")
    elif action == "nbhd":
        if len(rest) != 1:
            raise ParseError("usage: demo NAME nbhd <elem>")
        x = ed.get_domain(name).check(ed.parse_element(rest[0]))
        for k, S in ed.neighborhoods(name, x).items():
            rep.values[k] = S.render()
            rep.lines.append(f"{k}: {S.render()}")
    elif action == "dist":
        if len(rest) != 2:
            raise ParseError("usage: demo NAME dist <x> <y> --neg {none|I|J}")
        x, y = (ed.parse_element(t) for t in rest)
        d = ed.sym_distance(name, "default", args.neg or "J", x, y)
        rep.values.update({"l": q(d.l), "u": q(d.u)})
        rep.lines.append(f"l={q(d.l)} u={q(d.u)}")
    elif action == "anytime":
        if len(rest) != 2:
            raise ParseError("usage: demo NAME anytime <x> <y> --steps N")
        x, y = (ed.parse_element(t) for t in rest)
        seq = ed.anytime_distance(name, x, y, args.steps, args.neg or "J")
        rep.values["steps"] = [[q(d.l), q(d.u)] for d in seq]
        rep.lines += [f"{k}: [{q(d.l)},{q(d.u)}]" for k, d in enumerate(seq)]
    else:
        raise ParseError(f"unknown demo action {action!r}")


def cmd_check_all(args, rep):
    path = args.files[0]
    ext = Path(path).suffix
    if ext not in (".isys", ".amap"):
        raise ParseError(f"unknown file extension {ext!r}")
    _need(path, ext)
    obj = formats.load_any(path)
    if ext == ".isys":
        _isys_checks(rep, obj)
        rep.values["elements"] = len(obj.elements())
        if not isinstance(obj, FinitaryInfoSystem) and len(obj) <= SUB_LIMIT:
            try:
                rep.values["sub_size"] = len(SubSystem(obj).element_masks())
            except TooLarge:
                rep.values["sub_size"] = None
    else:
        f = obj
        try:
            _amap_checks(rep, f)
        except TooLarge:
            rep.values["mapping_axioms"] = "skipped"
        if f.dst == f.src or targets_top(f):
            prof = classify(f)
            rep.values.update(prof.as_dict())
            if prof.retraction:
                rep.verdict("finitary", is_finitary(f).verdict)
    for k, v in rep.verdicts.items():
        rep.lines.append(f"{k}: {_fmt_bool(v)}")
    for k, v in rep.values.items():
        rep.lines.append(f"{k}: {v}")


VERBS = {"validate": cmd_validate, "elements": cmd_elements, "dist": cmd_dist, "sub": cmd_sub,
         "fix": cmd_fix, "fin": cmd_fin, "tol": cmd_tol, "demo": cmd_demo,
         "check-all": cmd_check_all}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser():
    p = _Parser(prog="dom", description="Finite and symbolic domain-theory checks.")
    p.add_argument("verb", choices=sorted(VERBS))
    p.add_argument("files", nargs="*")
    p.add_argument("--weights")
    p.add_argument("--neg", choices=["none", "I", "J"])
    p.add_argument("--map")
    p.add_argument("--json", action="store_true")
    p.add_argument("--steps", type=int, default=8)
    p.add_argument("--approx", action="store_true")
    p.add_argument("--embed", action="store_true", help="sub: also dump i and j as .amap")
    p.add_argument("--check", action="store_true", help="fin: criteria and witnesses (default)")
    p.add_argument("--quotient", action="store_true", help="fin: emit the quotient as .isys")
    p.add_argument("--projection", action="store_true", help="fin: use the projection criterion")
    p.add_argument("--dump", action="store_true", help="fix: emit the fixed-point system")
    return p


def run(argv, out=None, err=None):
    """Execute one command; returns (report, exit code)."""
    out = out or sys.stdout
    err = err or sys.stderr
    rep = Report()
    try:
        args = build_parser().parse_intermixed_args(argv)
        if args.map:
            args.files.insert(0, args.map)
        if not args.files:
            raise ParseError(f"{args.verb} needs a file argument")
        if args.steps < 0:
            raise ParseError("--steps must be nonnegative")
        if args.check and args.quotient:
            raise ParseError("--check and --quotient are exclusive")
        VERBS[args.verb](args, rep)
    except ParseError as e:
        print(str(e), file=err)
        return rep, 2
    except DomainError as e:
        print(str(e), file=err)
        if "--json" in argv:
            print(json.dumps({"error": e.name, "message": str(e)}, sort_keys=True), file=out)
        return rep, 1
    if args.json:
        payload = rep.values if args.verb == "dist" else rep.as_json()
        print(json.dumps(payload, sort_keys=True), file=out)
    else:
        for line in rep.lines:
            print(line, file=out)
    return rep, 0 if rep.ok else 1


def main(argv=None):
    _, code = run(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
