"""Command-line driver.

Exit status: 0 when every reported check passes, 1 when a mathematical
check fails, 2 on input or parse errors.  Reports are lines of the form
``CHECK <id> PASS|FAIL [witness]``.
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from . import catalog as cat
from . import io as cio
from . import linalg as la
from .derivations import derivation_report, derivation_space
from .doubleext import VARIANTS, DoubleExtensionError, extend, lift_delta, reconstruct
from .field import FieldError, format_literal, parse_literal
from .forms import FormError, classify_symmetry, closed_report, invariance_report, vocabulary
from .manin import (
    ManinError,
    ManinTriple,
    build_manin,
    check_manin_conditions,
    cocycle_check,
    eqbra0_report,
    manin_dext_even,
    manin_dext_odd,
    manin_reduce,
    manin_search,
)
from .report import Check, Report
from .rmatrix import (
    BudgetError,
    RMatrixError,
    Tensor2,
    coboundary_is_cocycle,
    deform,
    ijr_check,
    is_r_matrix,
    jacobi_obstruction,
    quasitriangular_conditions,
    r_to_R,
    search_r_matrices,
)
from .superalgebra import LieSuperAlgebra, StructureError, fmt_vec
from .vinberg import VinbergError, left_symmetry_report, star_product, superize


class InputError(Exception):
    pass


class Output:
    def __init__(self, quiet: bool = False):
        self.quiet = quiet
        self.failed = False

    def report(self, rep: Report, prefix: str = "") -> None:
        for c in rep.checks:
            if not c.passed:
                self.failed = True
            if not (c.passed and self.quiet):
                print(Check(prefix + c.id, c.passed, c.witness).line())

    def check(self, id: str, passed: bool, witness: str = "") -> None:
        r = Report()
        r.add(id, passed, witness)
        self.report(r)

    def line(self, text: str) -> None:
        print(text)


# -- helpers ---------------------------------------------------------------------


def _load(args) -> cio.Workspace:
    return cio.load(args.file)


def _algebra(ws: cio.Workspace, name: str | None) -> tuple[str, LieSuperAlgebra]:
    if name is None:
        if not ws.algebras:
            raise InputError("the file defines no algebra")
        name = next(iter(ws.algebras))
    if name not in ws.algebras:
        raise InputError(f"no algebra named '{name}'")
    return name, ws.algebras[name]


def _named(table: dict, kind: str, name: str | None, alg: str | None = None):
    if name is None:
        cands = [k for k, (a, _) in table.items() if alg is None or a == alg]
        if len(cands) != 1:
            raise InputError(f"name the {kind} with --{kind}")
        name = cands[0]
    if name not in table:
        raise InputError(f"no {kind} named '{name}'")
    return table[name][1]


def _literal(s: str, F) -> int:
    try:
        return F.check(parse_literal(s))
    except FieldError as e:
        raise InputError(str(e)) from None


def _vector(s: str | None, g: LieSuperAlgebra) -> list[int] | None:
    if s is None:
        return None
    v = [0] * g.n
    if s.strip() == "0":
        return v
    for term in s.split("+"):
        term = term.strip()
        c, name = 1, term
        if term.startswith("0x") and "*" in term:
            coef, name = term.split("*", 1)
            c = _literal(coef, g.field)
        if name not in g.index:
            raise InputError(f"unknown basis element '{name}'")
        v[g.index[name]] ^= c
    return v


def _values(s: str | None, g: LieSuperAlgebra) -> list[int] | None:
    if s is None:
        return None
    vals = [_literal(t, g.field) for t in s.split(",")]
    if len(vals) != g.n:
        raise InputError(f"expected {g.n} comma-separated values")
    return vals


def _write(ws: cio.Workspace, path: str | None) -> None:
    if path:
        cio.save(ws, path)


def _figure(args, matrix, labels, title) -> None:
    if getattr(args, "figure", None):
        from .figures import heatmap

        heatmap(matrix, labels, title, args.figure)


def _structure_figure(args, g: LieSuperAlgebra, title: str) -> None:
    if getattr(args, "figure", None):
        from .figures import structure_matrix

        _figure(args, structure_matrix(g), g.names, title)


def _triple(ws: cio.Workspace, args) -> ManinTriple:
    alg, h = _algebra(ws, args.algebra)
    B = _named(ws.forms, "form", args.form, alg)
    subs = {k: v for k, (a, v) in ws.subspaces.items() if a == alg}
    for key in (args.g_sub, args.k_sub):
        if key not in subs:
            raise InputError(f"no subspace named '{key}' on {alg}")
    return ManinTriple.make(h, B, subs[args.g_sub], subs[args.k_sub])


def _triple_workspace(T: ManinTriple, extra: dict | None = None) -> cio.Workspace:
    ws = cio.workspace_of(T.h, "h")
    ws.forms["B"] = ("h", T.B)
    ws.subspaces["gsub"] = ("h", [list(v) for v in T.g_sub])
    ws.subspaces["ksub"] = ("h", [list(v) for v in T.k_sub])
    for k, v in (extra or {}).items():
        ws.operators[k] = ("h", v)
    return ws


# -- commands ----------------------------------------------------------------------


def cmd_verify(args, out: Output) -> None:
    ws = _load(args)
    names = [args.algebra] if args.algebra else list(ws.algebras)
    for nm in names:
        _, g = _algebra(ws, nm)
        out.report(g.verify(), f"{nm}/" if len(names) > 1 else "")
    _structure_figure(args, _algebra(ws, names[0])[1], "structure: nonzero entries of [e_i, e_j]")


def cmd_forms(args, out: Output) -> None:
    ws = _load(args)
    alg, g = _algebra(ws, args.algebra)
    B = _named(ws.forms, "form", args.form, alg)
    if args.action == "classify":
        out.line(f"FORM parity {B.parity} vocabulary {vocabulary(B)}")
        for label in classify_symmetry(B, g):
            out.line(f"CLASS {label}")
    elif args.closed:
        out.report(closed_report(B, g))
    else:
        rep = Report()
        rep.add("nondegenerate", la.rank(g.field, B.gram) == g.n, "Gram matrix is singular")
        labels = classify_symmetry(B, g)
        rep.add("even-antisymmetric", "even-antisymmetric" in labels, "not symmetric with zero odd diagonal")
        rep.extend(invariance_report(B, g))
        out.report(rep)
    _figure(args, B.gram, g.names, "Gram matrix")


def cmd_deriv(args, out: Output) -> None:
    ws = _load(args)
    alg, g = _algebra(ws, args.algebra)
    if args.action == "space":
        basis = derivation_space(g, args.parity)
        out.line(f"DIM {len(basis)}")
        res = cio.Workspace(g.field)
        res.algebras[alg] = g
        for k, D in enumerate(basis):
            res.operators[f"D{k:02d}"] = (alg, D)
        for ln in cio.dumps(res).splitlines():
            if not ln.startswith(("field", "algebra", "basis", "bracket", "square")):
                out.line(ln)
        _write(res, args.out)
    else:
        D = _named(ws.operators, "operator", args.operator, alg)
        out.report(derivation_report(D, g))


def _seed(ws, args):
    alg, a = _algebra(ws, args.algebra)
    Ba = _named(ws.forms, "form", args.form, alg)
    D = _named(ws.operators, "operator", args.operator, alg)
    return alg, a, Ba, D


def _extension(args, a, Ba, D):
    F = a.field
    return extend(
        args.variant,
        a,
        Ba,
        D,
        alpha=_values(args.alpha, a),
        a0=_vector(args.a0, a),
        m=_literal(args.m, F) if args.m else 0,
        c=_literal(args.c, F) if args.c else 0,
    )


def cmd_dext(args, out: Output) -> None:
    ws = _load(args)
    if args.action == "reduce":
        alg, g = _algebra(ws, args.algebra)
        B = _named(ws.forms, "form", args.form, alg)
        if args.omega not in ws.forms:
            raise InputError(f"no form named '{args.omega}'")
        w = ws.forms[args.omega][1]
        rec = reconstruct(g, B, w, args.variant, True if args.assume_irreducible else None)
        out.check("reconstruct", bool(rec), "" if rec else rec.reason)
        if rec:
            out.line(f"VARIANT {rec.variant}")
            out.line(f"LAMBDA {format_literal(rec.lam)}")
            for note in rec.notes:
                out.line(f"NOTE {note}")
            res = cio.workspace_of(rec.a, "a")
            res.forms["Ba"] = ("a", rec.Ba)
            res.operators["D"] = ("a", rec.D)
            res.operators["Dt"] = ("a", rec.Dt)
            if rec.a0 is not None:
                res.vectors["a0"] = ("a", list(rec.a0))
            res.vectors["shift"] = ("a", list(rec.shift))
            _write(res, args.out)
        return
    alg, a, Ba, D = _seed(ws, args)
    try:
        ext = _extension(args, a, Ba, D)
    except DoubleExtensionError as e:
        out.check(e.label, False, e.witness)
        return
    out.report(ext.g.verify())
    res = cio.workspace_of(ext.g, "g")
    res.forms["B"] = ("g", ext.B)
    if args.action == "lift":
        Dt = _named(ws.operators, "operator", args.dt, alg)
        try:
            lift = lift_delta(
                ext,
                Dt,
                _literal(args.lam, a.field),
                _vector(args.shift, a),
                _literal(args.mu, a.field) if args.mu else 0,
            )
        except DoubleExtensionError as e:
            out.check(e.label, False, e.witness)
            return
        out.check("lift", True)
        res.operators["Delta"] = ("g", lift.delta)
        res.forms["omega"] = ("g", lift.omega)
    _write(res, args.out)
    _structure_figure(args, ext.g, f"{args.variant} double extension")


def cmd_manin(args, out: Output) -> None:
    ws = _load(args)
    if args.action in ("build", "check"):
        if not ws.duals:
            raise InputError("the file has no dual block")
        pair = ws.dual_pair(args.dual)
        if args.action == "check":
            out.report(check_manin_conditions(pair))
            out.report(cocycle_check(pair))
            out.report(eqbra0_report(pair))
            return
        try:
            T = build_manin(pair)
        except ManinError as e:
            if e.report is not None:
                out.report(e.report)
            else:
                out.check("manin", False, str(e))
            return
        out.report(T.report())
        _write(_triple_workspace(T), args.out)
        _figure(args, T.B.gram, T.h.names, "Manin double: Gram matrix")
        return
    if args.action == "search":
        alg, h = _algebra(ws, args.algebra)
        B = _named(ws.forms, "form", args.form, alg)
        try:
            found = manin_search(h, B, args.budget)
        except ManinError as e:
            raise InputError(str(e)) from None
        out.line(f"FOUND {len(found)}")
        for i, T in enumerate(found):
            g = "; ".join(fmt_vec(h, v) for v in T.g_sub)
            k = "; ".join(fmt_vec(h, v) for v in T.k_sub)
            out.line(f"SPLIT {i} g=[{g}] k=[{k}]")
        if found:
            _write(_triple_workspace(found[0]), args.out)
        return
    T = _triple(ws, args)
    if args.action == "reduce":
        red = manin_reduce(T, args.variant)
        out.check("reduce", bool(red), "" if red else red.reason)
        if red:
            out.line(f"SWAPPED {int(red.swapped)}")
            _write(_triple_workspace(red.seed, {"D": red.D}), args.out)
        return
    alg = args.algebra or next(iter(ws.algebras))
    D = _named(ws.operators, "operator", args.operator, alg)
    try:
        if args.variant == "even":
            E = manin_dext_even(T, D, _values(args.alpha, T.h))
        else:
            E = manin_dext_odd(T, D, _vector(args.a0, T.h) or [0] * T.h.n)
    except DoubleExtensionError as e:
        out.check(e.label, False, e.witness)
        return
    except ManinError as e:
        if e.report is not None:
            out.report(e.report)
        else:
            out.check("manin-dext", False, str(e))
        return
    out.report(E.checks)
    _write(_triple_workspace(E.triple), args.out)


def cmd_rmatrix(args, out: Output) -> None:
    ws = _load(args)
    alg, g = _algebra(ws, args.algebra)
    if args.action == "search":
        cons = [c for c in args.constraints.split(",") if c]
        try:
            found = search_r_matrices(g, cons, args.budget, args.workers)
        except BudgetError as e:
            raise InputError(str(e)) from None
        out.line(f"FOUND {len(found)}")
        res = cio.workspace_of(g, alg)
        width = len(str(max(len(found) - 1, 0)))
        for k, r in enumerate(found):
            res.tensors[f"r{k:0{width}d}"] = (alg, r.r)
        for ln in cio.dumps(res).splitlines():
            if ln.startswith(("tensor", "row")):
                out.line(ln)
        _write(res, args.out)
        return
    r = Tensor2.make(g, _named(ws.tensors, "tensor", args.tensor, alg))
    if args.action == "check":
        out.check("cybe", is_r_matrix(r), "CYB(r) ≠ 0")
        out.report(quasitriangular_conditions(r))
        if r.is_even():
            out.check("coboundary-cocycle", coboundary_is_cocycle(r), "x·δ_r(x) ≠ δ_r(s(x))")
            out.report(jacobi_obstruction(r))
        if r.is_even() and r.is_symmetric():
            out.report(ijr_check(g, r_to_R(r)))
        _figure(args, r.r, g.names, "tensor coefficients")
        return
    B = _named(ws.forms, "form", args.form, alg)
    try:
        d = deform(g, B, r)
    except RMatrixError as e:
        if e.report is not None:
            out.report(e.report)
        else:
            out.check("deform", False, str(e))
        return
    out.report(d.report)
    res = cio.workspace_of(d.algebra, alg)
    res.operators["U"] = (alg, d.U)
    _write(res, args.out)
    _structure_figure(args, d.algebra, "deformed structure")


def cmd_vinberg(args, out: Output) -> None:
    ws = _load(args)
    alg, g = _algebra(ws, args.algebra)
    D = _named(ws.operators, "operator", args.operator, alg)
    if args.action == "star":
        p = star_product(g.desuperize(), D)
        for i in range(g.n):
            for j in range(g.n):
                v = p(g.e(i), g.e(j))
                if any(v):
                    out.line(f"STAR {g.names[i]} {g.names[j]} = {cio._terms(g, v)}")
        return
    if args.action == "check":
        p = star_product(g.desuperize(), D)
        out.report(left_symmetry_report(p))
        bad = [
            (i, j)
            for i in range(g.n)
            for j in range(g.n)
            if la.vadd(p(g.e(i), g.e(j)), p(g.e(j), g.e(i))) != list(g.c[i][j])
        ]
        out.check("symmetrized-bracket", not bad, f"({g.names[bad[0][0]]},{g.names[bad[0][1]]})" if bad else "")
        return
    res = superize(g, D)
    out.check("superize", bool(res), "" if res else str(res))
    if res:
        out.report(res.verify())
        _write(cio.workspace_of(res, alg), args.out)


def cmd_catalog(args, out: Output) -> None:
    if args.action == "list":
        for name, desc in cat.ENTRIES.items():
            out.line(f"{name}: {desc}")
        return
    ws = catalog_workspace(args.name, args.params)
    text = cio.dumps(ws)
    if args.out:
        cio.save(ws, args.out)
    else:
        sys.stdout.write(text)


def _params(s: str | None, count: int, F) -> list[int]:
    if not s:
        vals = []
    else:
        vals = []
        for t in s.split(","):
            t = t.strip()
            vals.append(_literal(t, F) if t.startswith("0x") else F.check(int(t)))
    if count and len(vals) not in (0, count):
        raise InputError(f"expected {count} parameters")
    return vals or [0] * count


def catalog_workspace(name: str, params: str | None) -> cio.Workspace:
    from .field import gf

    F2, F4 = gf(1), gf(2)
    try:
        if name == "hei2":
            _params(params, 0, F2)
            return cio.workspace_of(cat.hei2(), "g")
        if name == "hei2-dual":
            return cio.workspace_of(cat.hei2_dual(*_params(params, 4, F2)), "gstar")
        if name == "hei2-manin":
            T = cat.hei2_manin(*_params(params, 4, F2))
            return _triple_workspace(T)
        if name == "hei2-pair":
            pair = cat.hei2_pair(*_params(params, 4, F2))
            ws = cio.Workspace(F2)
            ws.algebras["g"] = pair.g
            ws.algebras["gstar"] = pair.gstar
            ws.duals.append(("g", "gstar", list(zip(pair.g.names, pair.gstar.names))))
            return ws
        if name == "hei2-deriv-gf4":
            T = cat.hei2_manin(field=F4)
            D = cat.hei2_deriv_gf4(*_params(params, 4, F4), triple=T)
            return _triple_workspace(T, {"D": D})
        if name == "abelian":
            m, n = _ints(params, 2)
            return cio.workspace_of(cat.abelian_algebra(m, n), "g")
        if name == "oddpair":
            a, B = cat.oddpair()
            ws = cio.workspace_of(a, "a")
            ws.forms["B"] = ("a", B)
            return ws
    except cat.CatalogError as e:
        raise InputError(str(e)) from None
    raise InputError(f"unknown catalog entry '{name}'")


def _ints(s: str | None, count: int) -> list[int]:
    try:
        vals = [int(t) for t in (s or "").replace("|", ",").split(",") if t.strip()]
    except ValueError:
        raise InputError("parameters must be integers") from None
    if len(vals) != count or any(v < 0 for v in vals):
        raise InputError(f"expected {count} non-negative integers")
    return vals


# -- argument parsing --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="char2lie", description="Lie superalgebras in characteristic 2")
    p.add_argument("-q", "--quiet", action="store_true", help="print only failing checks")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, figure=False):
        sp.add_argument("file")
        sp.add_argument("--algebra")
        if figure:
            sp.add_argument("--figure", metavar="PATH", help="write a PNG heatmap")

    sp = sub.add_parser("verify", help="Jacobi identities of every algebra in a file")
    common(sp, figure=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("forms", help="classify or check a bilinear form")
    sp.add_argument("action", choices=["classify", "check"])
    common(sp, figure=True)
    sp.add_argument("--form")
    sp.add_argument("--closed", action="store_true", help="check the cocycle identities instead of NIS")
    sp.set_defaults(func=cmd_forms)

    sp = sub.add_parser("deriv", help="derivation spaces and checks")
    sp.add_argument("action", choices=["space", "check"])
    common(sp)
    sp.add_argument("--parity", type=int, choices=[0, 1], default=0)
    sp.add_argument("--operator")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_deriv)

    sp = sub.add_parser("dext", help="double extensions")
    sp.add_argument("action", choices=["build", "lift", "reduce"])
    common(sp, figure=True)
    sp.add_argument("--variant", choices=VARIANTS, required=True)
    sp.add_argument("--form")
    sp.add_argument("--operator")
    sp.add_argument("--alpha", help="comma-separated α values on the basis")
    sp.add_argument("--a0", help="vector such as 'p + 0x2*z'")
    sp.add_argument("--m")
    sp.add_argument("--c")
    sp.add_argument("--dt", help="operator name of Δ̃ (lift)")
    sp.add_argument("--lam", default="0x1")
    sp.add_argument("--shift")
    sp.add_argument("--mu")
    sp.add_argument("--omega", help="form name of ω (reduce)")
    sp.add_argument("--assume-irreducible", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_dext)

    sp = sub.add_parser("manin", help="Manin triples")
    sp.add_argument("action", choices=["build", "check", "dext", "reduce", "search"])
    common(sp, figure=True)
    sp.add_argument("--dual", type=int, default=0, help="index of the dual block")
    sp.add_argument("--budget", type=int, default=1 << 16, help="candidate subspaces (search)")
    sp.add_argument("--form")
    sp.add_argument("--g-sub", default="gsub")
    sp.add_argument("--k-sub", default="ksub")
    sp.add_argument("--variant", choices=["even", "odd"], default="even")
    sp.add_argument("--operator")
    sp.add_argument("--alpha")
    sp.add_argument("--a0")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_manin)

    sp = sub.add_parser("rmatrix", help="classical r-matrices")
    sp.add_argument("action", choices=["check", "search", "deform"])
    common(sp, figure=True)
    sp.add_argument("--tensor")
    sp.add_argument("--form")
    sp.add_argument("--constraints", default="even,symmetric,cybe")
    sp.add_argument("--budget", type=int, default=1 << 16)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_rmatrix)

    sp = sub.add_parser("vinberg", help="left-symmetric products and superization")
    sp.add_argument("action", choices=["star", "check", "superize"])
    common(sp)
    sp.add_argument("--operator")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_vinberg)

    sp = sub.add_parser("catalog", help="built-in algebras")
    sp.add_argument("action", choices=["list", "emit"])
    sp.add_argument("name", nargs="?")
    sp.add_argument("--params")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_catalog)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    if args.command == "catalog" and args.action == "emit" and not args.name:
        print("error: catalog emit needs an entry name", file=sys.stderr)
        return 2
    out = Output(args.quiet)
    try:
        args.func(args, out)
    except BrokenPipeError:
        # output cut short by a pager or head; silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 1 if out.failed else 0
    except cio.ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (InputError, OSError, KeyError, FormError, StructureError, VinbergError, FieldError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 1 if out.failed else 0


if __name__ == "__main__":
    sys.exit(main())
