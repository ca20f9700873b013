"""Line-oriented algebra files.

Example::

    # hei(0|2) with a form
    field 1 0x3
    algebra g
    basis p:1 q:1 z:0
    bracket p q = z
    form B on g parity 1
    row 0x0 0x0 0x1
    ...

Top-level keys: ``field``, ``algebra``, ``form``, ``operator``, ``tensor``,
``vector``, ``subspace``, ``dual``.  Inside an algebra: ``basis``,
``bracket`` (pairs listed with i <= j), ``square``.  Matrix blocks take
``row`` lines.  ``#`` starts a comment.  Field elements are written as
0x-prefixed hex bit masks.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dfield
from typing import Sequence

from .derivations import GradedOperator, operator_parity
from .field import Field, FieldError, format_literal, gf, parse_literal
from .forms import BilinearForm, FormError
from .manin import DualPair
from .superalgebra import LieSuperAlgebra, StructureError

TOP = ("field", "algebra", "form", "operator", "tensor", "vector", "subspace", "dual")


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0, path: str = "<input>"):
        super().__init__(message)
        self.message, self.line, self.col, self.path = message, line, col, path

    def __str__(self) -> str:
        return f"{self.path}:{self.line}:{self.col}: {self.message}"


@dataclass
class Workspace:
    field: Field
    algebras: dict[str, LieSuperAlgebra] = dfield(default_factory=dict)
    forms: dict[str, tuple[str, BilinearForm]] = dfield(default_factory=dict)
    operators: dict[str, tuple[str, GradedOperator]] = dfield(default_factory=dict)
    tensors: dict[str, tuple[str, tuple[tuple[int, ...], ...]]] = dfield(default_factory=dict)
    vectors: dict[str, tuple[str, list[int]]] = dfield(default_factory=dict)
    subspaces: dict[str, tuple[str, list[list[int]]]] = dfield(default_factory=dict)
    duals: list[tuple[str, str, list[tuple[str, str]]]] = dfield(default_factory=list)

    def algebra(self, name: str | None = None) -> LieSuperAlgebra:
        if name is None:
            if not self.algebras:
                raise KeyError("the file defines no algebra")
            return next(iter(self.algebras.values()))
        return self.algebras[name]

    def dual_pair(self, index: int = 0) -> DualPair:
        """The index-th dual block, with the second algebra reordered to match."""
        g_name, k_name, pairs = self.duals[index]
        g, k = self.algebras[g_name], self.algebras[k_name]
        order = dict(pairs)
        basis = [k.e(k.index[order[nm]]) for nm in g.names]
        return DualPair(g, k.restrict(basis, [order[nm] for nm in g.names]))


# -- writing ----------------------------------------------------------------------


def _terms(g: LieSuperAlgebra, v: Sequence[int]) -> str:
    out = []
    for nm, c in zip(g.names, v):
        if c == 1:
            out.append(nm)
        elif c:
            out.append(f"{format_literal(c)}*{nm}")
    return " + ".join(out) if out else "0"


def _rows(m) -> list[str]:
    return ["row " + " ".join(format_literal(a) for a in r) for r in m]


def dumps(ws: Workspace) -> str:
    F = ws.field
    lines = [f"field {F.degree} {format_literal(F.modulus)}"]
    for name in sorted(ws.algebras):
        g = ws.algebras[name]
        lines.append(f"algebra {name}" + ("" if g.has_squaring else " nosquaring"))
        lines.append("basis " + " ".join(f"{nm}:{p}" for nm, p in zip(g.names, g.parities)))
        for i in range(g.n):
            for j in range(i + 1, g.n):
                if any(g.c[i][j]):
                    lines.append(f"bracket {g.names[i]} {g.names[j]} = {_terms(g, g.c[i][j])}")
        for i in g.odd:
            if any(g.q[i]):
                lines.append(f"square {g.names[i]} = {_terms(g, g.q[i])}")
    for name in sorted(ws.forms):
        alg, B = ws.forms[name]
        lines.append(f"form {name} on {alg} parity {B.parity}")
        lines += _rows(B.gram)
    for name in sorted(ws.operators):
        alg, D = ws.operators[name]
        lines.append(f"operator {name} on {alg} parity {D.parity}")
        lines += _rows(D.matrix)
    for name in sorted(ws.tensors):
        alg, r = ws.tensors[name]
        lines.append(f"tensor {name} on {alg}")
        lines += _rows(r)
    for name in sorted(ws.vectors):
        alg, v = ws.vectors[name]
        lines.append(f"vector {name} on {alg} = {_terms(ws.algebras[alg], v)}")
    for name in sorted(ws.subspaces):
        alg, vs = ws.subspaces[name]
        lines.append(f"subspace {name} on {alg}")
        lines += _rows(vs)
    for g_name, k_name, pairs in ws.duals:
        lines.append(f"dual {g_name} {k_name} " + " ".join(f"{a}={b}" for a, b in pairs))
    return "\n".join(lines) + "\n"


def save(ws: Workspace, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(ws))


# -- reading ----------------------------------------------------------------------


class _Tokens:
    def __init__(self, text: str, lineno: int, path: str):
        self.items: list[tuple[str, int]] = []
        self.lineno, self.path = lineno, path
        col = 0
        for part in text.split():
            col = text.index(part, col)
            self.items.append((part, col + 1))
            col += len(part)
        self.pos = 0

    def error(self, msg: str, k: int | None = None) -> ParseError:
        k = self.pos if k is None else k
        col = self.items[k][1] if k < len(self.items) else (self.items[-1][1] + len(self.items[-1][0]) if self.items else 1)
        return ParseError(msg, self.lineno, col, self.path)

    def next(self, what: str) -> str:
        if self.pos >= len(self.items):
            raise self.error(f"expected {what}")
        self.pos += 1
        return self.items[self.pos - 1][0]

    def expect(self, word: str) -> None:
        got = self.next(f"'{word}'")
        if got != word:
            raise self.error(f"expected '{word}', got '{got}'", self.pos - 1)

    def rest(self) -> list[str]:
        out = [t for t, _ in self.items[self.pos :]]
        self.pos = len(self.items)
        return out

    def done(self) -> None:
        if self.pos < len(self.items):
            raise self.error(f"unexpected '{self.items[self.pos][0]}'")


@dataclass
class _AlgebraDraft:
    name: str
    line: int
    has_squaring: bool
    names: list[str] = dfield(default_factory=list)
    parities: list[int] = dfield(default_factory=list)
    brackets: dict = dfield(default_factory=dict)
    squares: dict = dfield(default_factory=dict)
    pair_squares: dict = dfield(default_factory=dict)


def _literal(tok: _Tokens, s: str, F: Field, k: int) -> int:
    try:
        return F.check(parse_literal(s))
    except FieldError as e:
        raise tok.error(str(e), k) from None


def _parse_terms(tok: _Tokens, F: Field, index: dict[str, int], n: int) -> list[int]:
    start = tok.pos
    text = " ".join(tok.rest())
    v = [0] * n
    if text.strip() == "0":
        return v
    for term in text.split("+"):
        term = term.strip()
        if not term:
            raise tok.error("empty term", start)
        c, name = 1, term
        if term.startswith("0x") and "*" in term:
            coef, name = term.split("*", 1)
            c = _literal(tok, coef, F, start)
        if name not in index:
            raise tok.error(f"unknown basis element '{name}'", start)
        v[index[name]] ^= c
    return v


def loads(text: str, path: str = "<input>") -> Workspace:
    F: Field | None = None
    drafts: dict[str, _AlgebraDraft] = {}
    cur_alg: _AlgebraDraft | None = None
    matrix: tuple[str, str, str, int | None, list, int] | None = None  # kind, name, alg, parity, rows, line
    ws_parts: dict[str, dict] = {k: {} for k in ("form", "operator", "tensor", "vector", "subspace")}
    duals = []

    def close_matrix():
        nonlocal matrix
        if matrix is not None:
            kind, name, alg, parity, rows, line = matrix
            ws_parts[kind][name] = (alg, parity, rows, line)
            matrix = None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        tok = _Tokens(line, lineno, path)
        key = tok.next("key")
        if key == "row":
            if matrix is None:
                raise tok.error("'row' outside a matrix block", 0)
            row = []
            while tok.pos < len(tok.items):
                row.append(_literal(tok, tok.next("literal"), F, tok.pos - 1))
            matrix[4].append(row)
            continue
        if key in ("basis", "bracket", "square"):
            if cur_alg is None or matrix is not None:
                raise tok.error(f"'{key}' outside an algebra block", 0)
            _algebra_line(tok, key, cur_alg, F)
            continue
        if key not in TOP:
            raise tok.error(f"unknown key '{key}'", 0)
        close_matrix()
        cur_alg = None
        if key == "field":
            if F is not None:
                raise tok.error("field given twice", 0)
            deg_s = tok.next("degree")
            try:
                deg = int(deg_s)
                mod = parse_literal(tok.next("modulus"))
                F = gf(deg, mod)
            except (ValueError, FieldError) as e:
                raise tok.error(f"bad field: {e}", 1) from None
            tok.done()
            continue
        if F is None:
            raise tok.error("the file must start with a field line", 0)
        if key == "algebra":
            name = tok.next("algebra name")
            flags = tok.rest()
            if any(f != "nosquaring" for f in flags):
                raise tok.error(f"unknown algebra flag '{[f for f in flags if f != 'nosquaring'][0]}'", 2)
            if name in drafts:
                raise tok.error(f"algebra '{name}' defined twice", 1)
            cur_alg = drafts[name] = _AlgebraDraft(name, lineno, not flags)
        elif key in ("form", "operator", "tensor", "subspace"):
            name = tok.next("name")
            tok.expect("on")
            alg = tok.next("algebra name")
            parity = None
            if key in ("form", "operator"):
                tok.expect("parity")
                p = tok.next("parity")
                if p not in ("0", "1"):
                    raise tok.error("parity must be 0 or 1", tok.pos - 1)
                parity = int(p)
            tok.done()
            if name in ws_parts[key]:
                raise tok.error(f"{key} '{name}' defined twice", 1)
            matrix = (key, name, alg, parity, [], lineno)
        elif key == "vector":
            name = tok.next("name")
            tok.expect("on")
            alg = tok.next("algebra name")
            tok.expect("=")
            if alg not in drafts:
                raise tok.error(f"unknown algebra '{alg}'", 3)
            d = drafts[alg]
            v = _parse_terms(tok, F, {nm: i for i, nm in enumerate(d.names)}, len(d.names))
            ws_parts["vector"][name] = (alg, None, v, lineno)
        elif key == "dual":
            a, b = tok.next("algebra name"), tok.next("algebra name")
            pairs = []
            for k, item in enumerate(tok.rest()):
                x, sep, y = item.partition("=")
                if not sep or not x or not y:
                    raise tok.error(f"expected name=name, got '{item}'", 3 + k)
                pairs.append((x, y))
            duals.append((a, b, pairs, lineno))
    close_matrix()
    if F is None:
        raise ParseError("empty file: no field line", 1, 1, path)
    return _build(F, drafts, ws_parts, duals, path)


def _algebra_line(tok: _Tokens, key: str, d: _AlgebraDraft, F: Field) -> None:
    if key == "basis":
        if d.names:
            raise tok.error("basis given twice", 0)
        start = tok.pos
        for k, item in enumerate(tok.rest(), start):
            nm, sep, p = item.rpartition(":")
            if not sep or not nm or p not in ("0", "1"):
                raise tok.error(f"expected name:parity, got '{item}'", k)
            if nm.startswith("0x") or any(ch in nm for ch in "+=:#"):
                raise tok.error(f"basis name '{nm}' may not start with 0x or contain + = : #", k)
            if nm in d.names:
                raise tok.error(f"duplicate basis name '{nm}'", k)
            d.names.append(nm)
            d.parities.append(int(p))
        return
    index = {nm: i for i, nm in enumerate(d.names)}
    if not d.names:
        raise tok.error("basis must come first", 0)
    n = len(d.names)
    if key == "bracket":
        a, b = tok.next("basis name"), tok.next("basis name")
        for k, nm in ((1, a), (2, b)):
            if nm not in index:
                raise tok.error(f"unknown basis element '{nm}'", k)
        i, j = index[a], index[b]
        if i > j:
            raise tok.error(f"bracket pairs are listed with i <= j: write 'bracket {b} {a}'", 1)
        tok.expect("=")
        if (i, j) in d.brackets:
            raise tok.error(f"bracket [{a},{b}] given twice", 1)
        v = _parse_terms(tok, F, index, n)
        if i == j and any(v):
            raise tok.error(f"[{a},{a}] must vanish", 1)
        d.brackets[(i, j)] = v
        return
    name = tok.next("basis name")
    tok.expect("=")
    v = _parse_terms(tok, F, index, n)
    if "+" in name:
        a, _, b = name.partition("+")
        if a not in index or b not in index:
            raise tok.error(f"unknown basis element in '{name}'", 1)
        d.pair_squares[(index[a], index[b])] = (v, tok.lineno)
    else:
        if name not in index:
            raise tok.error(f"unknown basis element '{name}'", 1)
        if name in [d.names[i] for i in d.squares]:
            raise tok.error(f"square of '{name}' given twice", 1)
        d.squares[index[name]] = v


def _build(F, drafts, parts, duals, path) -> Workspace:
    ws = Workspace(F)
    for name, d in drafts.items():
        n = len(d.names)
        c = [[[0] * n for _ in range(n)] for _ in range(n)]
        for (i, j), v in d.brackets.items():
            c[i][j] = list(v)
            c[j][i] = list(v)
        q = [d.squares.get(i, [0] * n) for i in range(n)]
        try:
            ws.algebras[name] = LieSuperAlgebra(
                F, d.names, d.parities, c, q, has_squaring=d.has_squaring,
                pair_squares={k: v for k, (v, _) in d.pair_squares.items()},
            )
        except StructureError as e:
            line = d.line
            for (i, j), (_, ln) in d.pair_squares.items():
                if d.names[i] in str(e) and d.names[j] in str(e):
                    line = ln
            raise ParseError(str(e), line, 1, path) from None

    def alg_of(kind, name, alg, line):
        if alg not in ws.algebras:
            raise ParseError(f"{kind} '{name}' refers to unknown algebra '{alg}'", line, 1, path)
        return ws.algebras[alg]

    for kind in ("form", "operator", "tensor", "subspace"):
        for name, (alg, parity, rows, line) in parts[kind].items():
            g = alg_of(kind, name, alg, line)
            width = g.n
            if any(len(r) != width for r in rows) or (kind != "subspace" and len(rows) != g.n):
                raise ParseError(f"{kind} '{name}' must have {'rows' if kind == 'subspace' else str(g.n) + ' rows'} of {width} entries", line, 1, path)
            try:
                if kind == "form":
                    ws.forms[name] = (alg, BilinearForm.make(g, rows, parity))
                elif kind == "operator":
                    found = operator_parity(rows, g.parities)
                    if found is None or (found != parity and any(map(any, rows))):
                        raise ParseError(f"operator '{name}' does not have parity {parity}", line, 1, path)
                    ws.operators[name] = (alg, GradedOperator(tuple(map(tuple, rows)), parity))
                elif kind == "tensor":
                    ws.tensors[name] = (alg, tuple(map(tuple, rows)))
                else:
                    ws.subspaces[name] = (alg, [list(r) for r in rows])
            except FormError as e:
                raise ParseError(f"form '{name}': {e}", line, 1, path) from None
    for name, (alg, _, v, line) in parts["vector"].items():
        ws.vectors[name] = (alg, v)
    for a, b, pairs, line in duals:
        for nm in (a, b):
            if nm not in ws.algebras:
                raise ParseError(f"dual block refers to unknown algebra '{nm}'", line, 1, path)
        g, k = ws.algebras[a], ws.algebras[b]
        left = [x for x, _ in pairs]
        right = [y for _, y in pairs]
        if sorted(left) != sorted(g.names) or sorted(right) != sorted(k.names) or len(set(right)) != len(right):
            raise ParseError("dual block must be a bijection between the two bases", line, 1, path)
        ws.duals.append((a, b, pairs))
    return ws


def load(path: str) -> Workspace:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), path)


def workspace_of(g: LieSuperAlgebra, name: str = "g") -> Workspace:
    ws = Workspace(g.field)
    ws.algebras[name] = g
    return ws
