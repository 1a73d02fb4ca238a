"""Session files: parser and interpreter.

Grammar (statements end with ``;``, ``#`` starts a comment)::

    ring R = QQ[x, y] / (x^2, x*y) [local] ;
    ring F = GF(7)[x] ;
    ideal I = (y) ;
    module M = coker [[x, y]; [0, x]] ;
    gb I;  nf x^3, I;  trace I;  ann I;  annann I;  istrace I;
    socle R;  artinian R;  gorenstein R samples=20 seed=0;  equiv R;  compare M;

Commands taking an ideal also accept an inline list ``(p1, p2)`` in the
current ring; ``trace`` also accepts a module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Union

from ..core import DegRevLex, GF, QQ, MonomialOrder, PolyRing
from ..errors import TraceIdealError
from ..syntax import (
    DuplicateIdentifier,
    ParseError,
    PolyExpr,
    SessionSyntaxError,
    TokenStream,
    UndefinedIdentifier,
    parse_poly_expr,
    parse_poly_list,
    realize,
    tokenize,
)

IDEAL_COMMANDS = ("gb", "trace", "ann", "annann", "istrace")
RING_COMMANDS = ("socle", "artinian", "gorenstein", "equiv")
COMMANDS = IDEAL_COMMANDS + RING_COMMANDS + ("nf", "compare")
DECLARATIONS = ("ring", "ideal", "module")

LOCAL_CAVEAT = "localization not computed; results are for the affine quotient"


@dataclass(frozen=True)
class RingDecl:
    name: str
    prime: int  # 0 for QQ
    variables: tuple
    relations: tuple
    local: bool
    line: int
    col: int


@dataclass(frozen=True)
class IdealDecl:
    name: str
    ring: str
    generators: tuple
    line: int
    col: int


@dataclass(frozen=True)
class ModuleDecl:
    name: str
    ring: str
    rows: tuple  # tuple of tuples of PolyExpr
    ncols: int
    line: int
    col: int


@dataclass(frozen=True)
class IdealRef:
    """Either a declared identifier or an inline generator list in ``ring``."""

    ring: str
    name: Optional[str] = None
    generators: Optional[tuple] = None


@dataclass(frozen=True)
class Command:
    name: str
    target: Union[IdealRef, str]
    line: int
    col: int
    poly: Optional[PolyExpr] = None
    options: tuple = ()


Statement = Union[RingDecl, IdealDecl, ModuleDecl, Command]


@dataclass
class SessionAst:
    statements: list = field(default_factory=list)


class _Parser:
    def __init__(self, text: str):
        self.stream = TokenStream(tokenize(text))
        self.symbols: dict = {}  # name -> (kind, ring name, ring variables)
        self.current_ring: Optional[str] = None

    # -- helpers ---------------------------------------------------------
    def _declare(self, tok, kind: str, ring: Optional[str], variables: tuple):
        if tok.text in self.symbols:
            raise DuplicateIdentifier(tok.line, tok.col, f"{tok.text!r} is already declared")
        self.symbols[tok.text] = (kind, ring, variables)

    def _require_ring(self, tok):
        if self.current_ring is None:
            raise UndefinedIdentifier(tok.line, tok.col, "no ring declared before this statement")
        return self.current_ring

    def _check_vars(self, exprs, ring_name: str):
        variables = self.symbols[ring_name][2]
        for e in exprs:
            unknown = sorted(e.variables() - set(variables))
            if unknown:
                raise UndefinedIdentifier(e.line, e.col, f"unknown variable {unknown[0]!r} in ring {ring_name}")

    def _lookup(self, kinds: tuple):
        tok = self.stream.expect("ident")
        entry = self.symbols.get(tok.text)
        if entry is None:
            raise UndefinedIdentifier(tok.line, tok.col, f"{tok.text!r} is not declared")
        if entry[0] not in kinds:
            raise SessionSyntaxError(tok.line, tok.col, f"{tok.text!r} is a {entry[0]}", kinds)
        return tok.text, entry

    def _int(self) -> int:
        tok = self.stream.expect("int")
        try:
            return int(tok.text)
        except ValueError:
            raise SessionSyntaxError(tok.line, tok.col, "integer literal too long") from None

    # -- grammar ---------------------------------------------------------
    def parse(self) -> SessionAst:
        ast = SessionAst()
        s = self.stream
        while not s.at("eof"):
            tok = s.peek()
            if tok.kind != "ident" or tok.text not in DECLARATIONS + COMMANDS:
                s.fail("expected a declaration or command", DECLARATIONS + COMMANDS)
            ast.statements.append(getattr(self, f"_stmt_{tok.text}")())
            s.expect(";")
        return ast

    def _stmt_ring(self) -> RingDecl:
        s = self.stream
        kw = s.next()
        name = s.expect("ident")
        s.expect("=")
        ftok = s.expect("ident")
        if ftok.text == "QQ":
            prime = 0
        elif ftok.text == "GF":
            s.expect("(")
            prime = self._int()
            s.expect(")")
        else:
            raise SessionSyntaxError(ftok.line, ftok.col, f"unknown field {ftok.text!r}", ("QQ", "GF"))
        s.expect("[")
        variables = []
        while True:
            v = s.expect("ident")
            if v.text in variables:
                raise DuplicateIdentifier(v.line, v.col, f"variable {v.text!r} repeated")
            variables.append(v.text)
            if s.accept("]"):
                break
            s.expect(",", "]")
        relations = ()
        if s.accept("/"):
            relations = tuple(parse_poly_list(s))
        local = False
        if s.at("ident") and s.peek().text == "local":
            s.next()
            local = True
        self._declare(name, "ring", name.text, tuple(variables))
        self._check_vars(relations, name.text)
        self.current_ring = name.text
        return RingDecl(name.text, prime, tuple(variables), relations, local, kw.line, kw.col)

    def _stmt_ideal(self) -> IdealDecl:
        s = self.stream
        kw = s.next()
        ring = self._require_ring(kw)
        name = s.expect("ident")
        s.expect("=")
        gens = tuple(parse_poly_list(s))
        self._check_vars(gens, ring)
        self._declare(name, "ideal", ring, ())
        return IdealDecl(name.text, ring, gens, kw.line, kw.col)

    def _stmt_module(self) -> ModuleDecl:
        s = self.stream
        kw = s.next()
        ring = self._require_ring(kw)
        name = s.expect("ident")
        s.expect("=")
        ck = s.expect("ident")
        if ck.text != "coker":
            raise SessionSyntaxError(ck.line, ck.col, "expected 'coker'", ("coker",))
        s.expect("[")
        rows = []
        if not s.at("]"):
            while True:
                s.expect("[")
                row = []
                if not s.accept("]"):
                    while True:
                        row.append(parse_poly_expr(s))
                        if s.accept("]"):
                            break
                        s.expect(",", "]")
                rows.append(tuple(row))
                if s.accept("]"):
                    break
                s.expect(";", ",", "]")
        else:
            s.next()
        ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise SessionSyntaxError(kw.line, kw.col, "matrix rows have different lengths")
            self._check_vars(r, ring)
        self._declare(name, "module", ring, ())
        return ModuleDecl(name.text, ring, tuple(rows), ncols, kw.line, kw.col)

    def _ideal_target(self, allow_module: bool = False):
        s = self.stream
        if s.at("("):
            tok = s.peek()
            ring = self._require_ring(tok)
            gens = tuple(parse_poly_list(s))
            self._check_vars(gens, ring)
            return IdealRef(ring, generators=gens)
        kinds = ("ideal", "module") if allow_module else ("ideal",)
        name, entry = self._lookup(kinds)
        if entry[0] == "module":
            return name
        return IdealRef(entry[1], name=name)

    def _ideal_command(self) -> Command:
        kw = self.stream.next()
        target = self._ideal_target(allow_module=(kw.text == "trace"))
        return Command(kw.text, target, kw.line, kw.col)

    _stmt_gb = _stmt_trace = _stmt_ann = _stmt_annann = _stmt_istrace = _ideal_command

    def _ring_command(self) -> Command:
        s = self.stream
        kw = s.next()
        name, _ = self._lookup(("ring",))
        options = []
        if kw.text == "gorenstein":
            seen = set()
            while s.at("ident") and s.peek().text in ("samples", "seed"):
                opt = s.next()
                if opt.text in seen:
                    raise DuplicateIdentifier(opt.line, opt.col, f"option {opt.text!r} repeated")
                seen.add(opt.text)
                s.expect("=")
                value = self._int()
                if opt.text == "samples" and value > 100000:
                    raise SessionSyntaxError(opt.line, opt.col, "samples must be at most 100000")
                options.append((opt.text, value))
        return Command(kw.text, name, kw.line, kw.col, options=tuple(options))

    _stmt_socle = _stmt_artinian = _stmt_gorenstein = _stmt_equiv = _ring_command

    def _stmt_nf(self) -> Command:
        s = self.stream
        kw = s.next()
        ring = self._require_ring(kw)
        poly = parse_poly_expr(s)
        s.expect(",")
        target = self._ideal_target()
        self._check_vars([poly], target.ring if isinstance(target, IdealRef) else ring)
        return Command("nf", target, kw.line, kw.col, poly=poly)

    def _stmt_compare(self) -> Command:
        kw = self.stream.next()
        name, _ = self._lookup(("module",))
        return Command("compare", name, kw.line, kw.col)


def parse_session(text: str) -> SessionAst:
    """Parse session text; raises a ParseError subclass on malformed input."""
    return _Parser(text).parse()


def parse_session_bytes(data: bytes) -> SessionAst:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        before = data[:exc.start]
        line = before.count(b"\n") + 1
        col = exc.start - (before.rfind(b"\n") + 1) + 1
        raise SessionSyntaxError(line, col, "input is not valid UTF-8") from None
    return parse_session(text)


# -- interpreter -----------------------------------------------------------

@dataclass
class Options:
    json: bool = False
    seed: int = 0
    order: MonomialOrder = DegRevLex
    oracle: str = "both"  # groebner | linear | both
    samples: int = 20


class CommandError(TraceIdealError):
    def __init__(self, line: int, col: int, message: str):
        self.line, self.col, self.message = line, col, message
        super().__init__(f"error at {line}:{col}: {message}")


@dataclass
class SessionResult:
    lines: list
    exit_code: int
    error: Optional[str] = None


class Interpreter:
    def __init__(self, options: Optional[Options] = None):
        self.options = options or Options()
        self.rings: dict = {}
        self.ideals: dict = {}
        self.modules: dict = {}
        self.lines: list = []

    # output helpers
    def _emit(self, stmt, text: str, payload: dict):
        if self.options.json:
            payload = dict(payload)
            payload.setdefault("command", stmt.name)
            payload.setdefault("line", stmt.line)
            ring = self._ring_of(stmt)
            if ring is not None and ring.local:
                payload["caveat"] = LOCAL_CAVEAT
            self.lines.append(json.dumps(payload, sort_keys=True, ensure_ascii=False))
        else:
            self.lines.append(text)

    def _ring_of(self, stmt):
        t = stmt.target
        if isinstance(t, IdealRef):
            return self.rings.get(t.ring)
        if t in self.rings:
            return self.rings[t]
        if t in self.modules:
            return self.modules[t].ring
        return None

    def _resolve_ideal(self, ref: IdealRef):
        if ref.name is not None:
            return self.ideals[ref.name]
        from ..quotient import RIdeal

        R = self.rings[ref.ring]
        return RIdeal(R, [realize(g, R.ambient) for g in ref.generators])

    # statements
    def execute(self, stmt: Statement):
        from ..quotient import QuotientRing, RIdeal

        if isinstance(stmt, RingDecl):
            field = GF(stmt.prime) if stmt.prime else QQ
            ambient = PolyRing(field, stmt.variables, self.options.order)
            rels = [realize(e, ambient) for e in stmt.relations]
            self.rings[stmt.name] = QuotientRing(ambient, rels, local=stmt.local)
            if stmt.local and not self.options.json:
                self.lines.append(f"# {stmt.name}: {LOCAL_CAVEAT}")
        elif isinstance(stmt, IdealDecl):
            R = self.rings[stmt.ring]
            self.ideals[stmt.name] = RIdeal(R, [realize(g, R.ambient) for g in stmt.generators])
        elif isinstance(stmt, ModuleDecl):
            from ..syzygy import PolyMatrix, PresentedModule

            R = self.rings[stmt.ring]
            rows = [[realize(e, R.ambient) for e in row] for row in stmt.rows]
            self.modules[stmt.name] = PresentedModule(R, PolyMatrix.from_rows(R.ambient, rows, stmt.ncols))
        else:
            getattr(self, f"_cmd_{stmt.name}")(stmt)

    def _linear_ideal(self, R, kind: str, I):
        from ..oracle import ann_linear, build_finite_algebra, trace_linear

        A = build_finite_algebra(R)
        gens = list(I.canonical_generators())
        if kind == "trace":
            return A.to_ideal(trace_linear(A, gens))
        if kind == "ann":
            return A.to_ideal(ann_linear(A, gens)) if gens else R.unit_ideal()
        ann = A.to_ideal(ann_linear(A, gens)) if gens else R.unit_ideal()
        inner = list(ann.canonical_generators())
        return A.to_ideal(ann_linear(A, inner)) if inner else R.unit_ideal()

    def _ideal_op(self, stmt, kind: str):
        from ..quotient import annihilator, double_annihilator, ideal_equal
        from ..trace import trace_of_ideal

        I = self._resolve_ideal(stmt.target)
        R = I.ring
        mode = self.options.oracle
        groebner_fn = {
            "trace": trace_of_ideal,
            "ann": annihilator,
            "annann": double_annihilator,
        }[kind]
        extra = {}
        if mode == "linear":
            result = self._linear_ideal(R, kind, I)
            extra["oracle"] = "linear"
        else:
            result = groebner_fn(R, I)
            if mode == "both" and R.is_artinian_local():
                other = self._linear_ideal(R, kind, I)
                if not ideal_equal(result, other):
                    raise CommandError(stmt.line, stmt.col, f"oracle disagreement: {result} vs {other}")
                extra["oracle"] = "agree"
        return I, result, extra

    def _cmd_gb(self, stmt):
        I = self._resolve_ideal(stmt.target)
        self._emit(stmt, str(I), {"result": str(I), "gb": [str(g) for g in I.gb]})

    def _cmd_nf(self, stmt):
        I = self._resolve_ideal(stmt.target)
        f = realize(stmt.poly, I.ring.ambient)
        r = I.lifted.normal_form(f)
        self._emit(stmt, str(r), {"result": str(r)})

    def _cmd_trace(self, stmt):
        if isinstance(stmt.target, str):
            from ..trace import trace_ideal

            result = trace_ideal(self.modules[stmt.target])
            self._emit(stmt, str(result), {"result": str(result)})
            return
        _, result, extra = self._ideal_op(stmt, "trace")
        self._emit(stmt, str(result), {"result": str(result), **extra})

    def _cmd_ann(self, stmt):
        _, result, extra = self._ideal_op(stmt, "ann")
        self._emit(stmt, str(result), {"result": str(result), **extra})

    def _cmd_annann(self, stmt):
        _, result, extra = self._ideal_op(stmt, "annann")
        self._emit(stmt, str(result), {"result": str(result), **extra})

    def _cmd_istrace(self, stmt):
        from ..quotient import ideal_equal

        I, tr, extra = self._ideal_op(stmt, "trace")
        value = ideal_equal(I, tr)
        self._emit(stmt, str(value).lower(), {"result": value, "trace": str(tr), **extra})

    def _cmd_socle(self, stmt):
        from ..quotient import socle

        soc, dim = socle(self.rings[stmt.target])
        self._emit(stmt, f"{soc} dim={dim}", {"result": str(soc), "dim": dim})

    def _cmd_artinian(self, stmt):
        value = self.rings[stmt.target].is_artinian_local()
        self._emit(stmt, str(value).lower(), {"result": value})

    def _cmd_gorenstein(self, stmt):
        from ..trace import gorenstein_by_socle, gorenstein_by_trace

        opts = dict(stmt.options)
        R = self.rings[stmt.target]
        if self.options.oracle == "linear":
            verdict = gorenstein_by_socle(R)
        else:
            verdict = gorenstein_by_trace(
                R, samples=opts.get("samples", self.options.samples), seed=opts.get("seed", self.options.seed)
            )
        self._emit(stmt, str(verdict), verdict.as_dict())

    def _cmd_equiv(self, stmt):
        from ..trace import verify_equivalences

        report = verify_equivalences(self.rings[stmt.target])
        self._emit(stmt, str(report), report.as_dict())

    def _cmd_compare(self, stmt):
        from ..trace import compare_trace_double_ann

        cmp = compare_trace_double_ann(self.modules[stmt.target])
        self._emit(stmt, str(cmp), cmp.as_dict())


def run_session(ast: SessionAst, options: Optional[Options] = None) -> SessionResult:
    """Execute statements in order; stops at the first failing statement (exit code 1)."""
    interp = Interpreter(options)
    for stmt in ast.statements:
        try:
            interp.execute(stmt)
        except CommandError as exc:
            return SessionResult(interp.lines, 1, str(exc))
        except (TraceIdealError, ZeroDivisionError, ValueError) as exc:
            what = getattr(stmt, "name", "statement")
            message = f"error at {stmt.line}:{stmt.col}: {what}: {exc}"
            return SessionResult(interp.lines, 1, message)
    return SessionResult(interp.lines, 0)


def run_text(text: Union[str, bytes], options: Optional[Options] = None) -> SessionResult:
    """Parse and run; parse failures give exit code 2."""
    try:
        ast = parse_session_bytes(text) if isinstance(text, bytes) else parse_session(text)
    except ParseError as exc:
        return SessionResult([], 2, str(exc))
    return run_session(ast, options)
