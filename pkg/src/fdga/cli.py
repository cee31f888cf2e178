"""Command line front end: ``fdga <command> ...``.

Exit status is 0 on success, 1 when a verification fails (a homotopy,
splitting or lift that does not hold), and 2 for usage and input errors.
"""
import argparse
import json
import sys
from typing import List, Optional

from .algebra import PresentationError, TruncationError
from .dsl import DSLError, DefinitionFile, parse_file
from .filtration import FilteredComplex, decalage
from .lifting import LiftError, lift
from .minimal import minimal_model
from .paths import check_r_homotopy
from .spectral import DirectPage, check_window
from .splitting import SplittingError, splitting_to_page_iso, verify_r_splitting


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def _load(path: str) -> DefinitionFile:
    try:
        return parse_file(path)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror or e}")


def _algebra(model: DefinitionFile, name: Optional[str]):
    try:
        return model.algebra(name)
    except KeyError:
        raise UsageError(f"no algebra named {name}" if name else "the file defines no algebra")


def _window(text: str):
    try:
        ps, qs = text.split(",")
        p0, p1 = (int(x) for x in ps.split(":"))
        q0, q1 = (int(x) for x in qs.split(":"))
    except ValueError:
        raise UsageError(f"bad window {text!r}, expected PMIN:PMAX,QMIN:QMAX")
    if p0 > p1 or q0 > q1:
        raise UsageError(f"empty window {text!r}")
    return p0, p1, q0, q1


def _default_window(C: FilteredComplex):
    top = C.max_d_degree()
    los, his = zip(*(C.bounds(n) for n in range(0, top + 1) if C.dim(n)))
    p0, p1 = min(los), max(his)
    # every cell (p, q) of the default window has degree q - p <= top
    return p0, p1, p0, top + p0


def cmd_pages(args) -> int:
    A = _algebra(_load(args.input), args.algebra)
    if args.r < 0:
        raise UsageError("r must be non-negative")
    C = FilteredComplex.from_algebra(A)
    C.algebra = A
    win = _window(args.window) if args.window else _default_window(C)
    p0, p1, q0, q1 = win
    degrees = [q - p for p in range(p0, p1 + 1) for q in range(q0, q1 + 1) if q - p >= 0]
    check_window(C, args.r, degrees)
    P = DirectPage(C, args.r)
    rep = P.report(*win)
    rep["algebra"] = A.name
    rep["window"] = list(win)
    _emit(args, rep, f"{A.name}: " + P.format_table(*win))
    return 0


def cmd_cohomology(args) -> int:
    A = _algebra(_load(args.input), args.algebra)
    N = args.max_degree
    if N + 1 > A.truncation:
        raise TruncationError(f"H^{N} needs degree {N + 1} of {A.name} (truncation {A.truncation})")
    rows, lines = [], [f"cohomology of {A.name}"]
    for n in range(0, N + 1):
        dim, reps = A.cohomology(n)
        rows.append({"degree": n, "dim": dim, "basis": [str(x) for x in reps]})
        lines.append(f"H^{n}  dim {dim}" + (f"  [{', '.join(map(str, reps))}]" if reps else ""))
    _emit(args, {"algebra": A.name, "cohomology": rows}, "\n".join(lines))
    return 0


def cmd_minimal_model(args) -> int:
    A = _algebra(_load(args.input), args.algebra)
    res = minimal_model(A, args.max_degree)
    M, rho = res.M, res.rho
    gens = [{"name": g.name, "degree": g.degree, "weight": g.weight,
             "d": str(M.differential[g.name]), "rho": str(rho.images[g.name])} for g in M.gens]
    lines = [f"minimal model of {A.name} through degree {args.max_degree}"]
    for g in gens:
        lines.append(f"{g['name']} : degree {g['degree']}, weight {g['weight']}, "
                     f"d = {g['d']}, rho = {g['rho']}")
    lines.append(res.format_log())
    _emit(args, {"algebra": A.name, "max_degree": args.max_degree, "generators": gens,
                 "log": res.log}, "\n".join(lines))
    return 0


def cmd_check_homotopy(args) -> int:
    model = _load(args.input)
    if args.homotopy not in model.homotopies:
        raise UsageError(f"no homotopy named {args.homotopy}")
    hd = model.homotopies[args.homotopy]
    r = hd.r if args.r is None else args.r
    problems = check_r_homotopy(hd.homotopy, model.morphism(hd.start), model.morphism(hd.end), r)
    ok = not problems
    text = (f"{hd.name}: {hd.start} ~ {hd.end} is a {r}-homotopy" if ok else
            f"{hd.name}: not a {r}-homotopy\n" + "\n".join(f"  {v}" for v in problems))
    _emit(args, {"homotopy": hd.name, "r": r, "from": hd.start, "to": hd.end, "ok": ok,
                 "violations": [str(v) for v in problems]}, text)
    return 0 if ok else 1


def cmd_check_splitting(args) -> int:
    model = _load(args.input)
    if args.bigrading not in model.bigradings:
        raise UsageError(f"no bigrading named {args.bigrading}")
    bd = model.bigradings[args.bigrading]
    r = bd.r if args.r is None else args.r
    A = model.algebra(bd.algebra)
    G = bd.resolve(A)
    problems = verify_r_splitting(A, G, r)
    iso_dims = {}
    if not problems:
        try:
            iso = splitting_to_page_iso(A, G, r)
            iso_dims = {f"{-p},{n + p}": M.rows for (p, n), M in sorted(iso.matrices.items())}
        except SplittingError as e:
            problems = [str(e)]
    ok = not problems
    text = (f"{bd.name} is an r-splitting of {A.name} for r = {r}; A^{{s,q}} ≅ E_{r}^{{s,q}} for "
            + ", ".join(f"(s,q)=({k}) dim {v}" for k, v in iso_dims.items()) if ok else
            f"{bd.name} is not an r-splitting of {A.name} for r = {r}\n" + "\n".join(f"  {v}" for v in problems))
    _emit(args, {"bigrading": bd.name, "algebra": A.name, "r": r, "ok": ok,
                 "page_iso_dims": iso_dims, "violations": [str(v) for v in problems]}, text)
    return 0 if ok else 1


def cmd_decalage(args) -> int:
    A = _algebra(_load(args.input), args.algebra)
    D = decalage(A)
    rows = [{"degree": n, "weight": p, "dim": k} for n, p, k in D.table()]
    lines = [f"Dec W on {A.name} (degree, weight: dim)"]
    for n in D.degrees():
        if not D.dims[n]:
            continue
        lo, hi = D.bounds(n)
        chain = " ⊆ ".join(f"{D.slice(p, n).dim}" for p in range(lo, hi + 1))
        lines.append(f"degree {n}: weights {lo}..{hi}: {chain}")
    if D.dropped_degrees:
        lines.append("not computed (beyond truncation): " + ", ".join(map(str, D.dropped_degrees)))
    _emit(args, {"algebra": A.name, "rows": rows, "dropped_degrees": list(D.dropped_degrees)},
          "\n".join(lines))
    return 0


def _resolve(spec: str, default: Optional[str], kind: str):
    path, _, name = spec.rpartition(":") if ":" in spec else ("", "", spec)
    if not path:
        if default is None:
            raise UsageError(f"{spec!r}: give FILE:NAME or use --input")
        path = default
    model = _load(path)
    try:
        if kind == "algebra":
            return model.algebra(name or None)
        if not name:
            if len(model.morphisms) != 1:
                raise UsageError(f"{path}: name the morphism with FILE:NAME")
            name = next(iter(model.morphisms))
        return model.morphism(name)
    except KeyError as e:
        raise UsageError(f"{spec}: {e.args[0]}")


def cmd_lift(args) -> int:
    M = _resolve(args.cofibrant, args.input, "algebra")
    w = _resolve(args.quis, args.input, "morphism")
    f = _resolve(args.map, args.input, "morphism")
    try:
        res = lift(M, w, f, r=args.r)
    except LiftError as e:
        _emit(args, {"ok": False, "error": str(e), "generator": e.generator},
              f"lift failed: {e}")
        return 1
    gens = [{"name": g.name, "g": str(res.g.images[g.name]), "h": str(res.h.images[g.name])}
            for g in M.gens]
    lines = [f"lift of {f.name} through {w.name} up to {args.r}-homotopy (verified)"]
    lines += [f"g({x['name']}) = {x['g']}\nh({x['name']}) = {x['h']}" for x in gens]
    _emit(args, {"ok": True, "r": args.r, "generators": gens}, "\n".join(lines))
    return 0


def cmd_hopf(args) -> int:
    from .hopf import hopf_for_power_map, HopfError
    if args.q < 1:
        raise UsageError("q must be a positive integer")
    try:
        res = hopf_for_power_map(args.q, with_lift=not args.no_lift)
    except HopfError as e:
        _emit(args, {"ok": False, "error": str(e)}, f"hopf: {e}")
        return 1
    sc = res.scenario
    payload = {"q": args.q, "epsilon": sc.epsilon, "sign": sc.sign,
               "model_coefficient": str(res.model_coefficient),
               "hopf_invariant": str(res.hopf_invariant),
               "lifted_coefficient": None if res.lifted_coefficient is None
               else str(res.lifted_coefficient),
               "verified": res.verified}
    lines = [f"g = [x0^{args.q} : x1^{args.q}]: E_1(g)(alpha) = {sc.epsilon}(a - b), epsilon = {sc.epsilon}",
             f"rho'.f~ ~_1 E_1(g).rho verified; f~(beta) = {res.model_coefficient}*gamma",
             f"H(f) = {res.hopf_invariant} = q^2"]
    if res.lifted_coefficient is not None:
        lines.append(f"independent lift gives f~(beta) = {res.lifted_coefficient}*gamma")
    _emit(args, payload, "\n".join(lines))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine readable output")
    ap = argparse.ArgumentParser(prog="fdga", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pages", parents=[common], help="E_r page with d_r in a window")
    p.add_argument("--input", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--window", help="PMIN:PMAX,QMIN:QMAX over weight p and q = n + p")
    p.add_argument("--algebra")
    p.set_defaults(func=cmd_pages)

    p = sub.add_parser("cohomology", parents=[common], help="cohomology with representatives")
    p.add_argument("--input", required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--algebra")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("minimal-model", parents=[common], help="minimal E_1-cofibrant model")
    p.add_argument("--input", required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--algebra")
    p.set_defaults(func=cmd_minimal_model)

    p = sub.add_parser("check-homotopy", parents=[common], help="verify an r-homotopy")
    p.add_argument("--input", required=True)
    p.add_argument("--homotopy", required=True)
    p.add_argument("--r", type=int)
    p.set_defaults(func=cmd_check_homotopy)

    p = sub.add_parser("check-splitting", parents=[common], help="verify an r-splitting")
    p.add_argument("--input", required=True)
    p.add_argument("--bigrading", required=True)
    p.add_argument("--r", type=int)
    p.set_defaults(func=cmd_check_splitting)

    p = sub.add_parser("decalage", parents=[common], help="the décalage filtration")
    p.add_argument("--input", required=True)
    p.add_argument("--algebra")
    p.set_defaults(func=cmd_decalage)

    p = sub.add_parser("lift", parents=[common], help="lift a map through an E_r-quasi-isomorphism")
    p.add_argument("--cofibrant", required=True, help="FILE:ALGEBRA or ALGEBRA with --input")
    p.add_argument("--quis", required=True, help="FILE:MORPHISM or MORPHISM with --input")
    p.add_argument("--map", required=True, help="FILE:MORPHISM or MORPHISM with --input")
    p.add_argument("--r", type=int, required=True, choices=[0, 1])
    p.add_argument("--input")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("hopf", parents=[common], help="Hopf invariant of [x0^q : x1^q]")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--no-lift", action="store_true", help="skip the independent lift")
    p.set_defaults(func=cmd_hopf)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DSLError as e:
        for d in e.diagnostics:
            print(f"{args.input}:{d}" if getattr(args, "input", None) else str(d), file=sys.stderr)
        return 2
    except (UsageError, TruncationError, PresentationError) as e:
        print(f"fdga: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
