"""Curve definition language: parser, ASTs, and high-order jets.

A curve file is line based (UTF-8, ``#`` comments)::

    space = R31            # or S21, S31
    x1 = t^2 - t
    x2 = t^2 + t
    x3 = sqrt(1 - 4*t^3)
    # x4 = ...             required iff space = S31
    domain = -0.3 0.3

Component expressions follow the grammar::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' exponent)?
    base   := number | 't' | func '(' expr ')' | '(' expr ')' | '-' base
    func   := sin|cos|tan|sinh|cosh|exp|log|sqrt

Derivatives are exact: expressions are pushed through truncated Taylor
arithmetic and converted to plain derivatives at the end.  There is no
abs/sign primitive, so everything parseable is smooth wherever it
evaluates.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import taylor
from .errors import CurveSyntaxError, EvalDomainError
from .minkowski import mdot

MAX_JET_ORDER = 6

FUNCTIONS = ("sin", "cos", "tan", "sinh", "cosh", "exp", "log", "sqrt")


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Expr:
    pass


@dataclass(frozen=True)
class Const(Expr):
    value: float


@dataclass(frozen=True)
class Var(Expr):
    pass


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class BinOp(Expr):
    op: str  # one of + - * /
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: float


@dataclass(frozen=True)
class Call(Expr):
    func: str
    arg: Expr


def pretty(e: Expr) -> str:
    """Render an AST to text that re-parses to an identical AST."""
    if isinstance(e, Const):
        v = e.value
        if v < 0:
            # negative literals only arise programmatically; keep them parseable
            return f"(-{_fmt_number(-v)})"
        return _fmt_number(v)
    if isinstance(e, Var):
        return "t"
    if isinstance(e, Neg):
        # '^' binds after unary minus in this grammar, so the argument needs
        # its own parentheses: -(x)^2 would re-parse as (-x)^2
        return f"(-({pretty(e.arg)}))"
    if isinstance(e, BinOp):
        return f"({pretty(e.left)} {e.op} {pretty(e.right)})"
    if isinstance(e, Pow):
        return f"({pretty(e.base)})^{_fmt_exponent(e.exponent)}"
    if isinstance(e, Call):
        return f"{e.func}({pretty(e.arg)})"
    raise TypeError(f"not an Expr node: {e!r}")


def _fmt_number(v: float) -> str:
    if float(v).is_integer() and abs(v) < 1e15:
        return str(int(v))
    return repr(float(v))


def _fmt_exponent(v: float) -> str:
    return _fmt_number(v) if v >= 0 else "-" + _fmt_number(-v)


def substitute(e: Expr, replacement: Expr) -> Expr:
    """Replace the parameter variable by another expression (reparametrization)."""
    if isinstance(e, Var):
        return replacement
    if isinstance(e, (Const,)):
        return e
    if isinstance(e, Neg):
        return Neg(substitute(e.arg, replacement))
    if isinstance(e, BinOp):
        return BinOp(e.op, substitute(e.left, replacement), substitute(e.right, replacement))
    if isinstance(e, Pow):
        return Pow(substitute(e.base, replacement), e.exponent)
    if isinstance(e, Call):
        return Call(e.func, substitute(e.arg, replacement))
    raise TypeError(f"not an Expr node: {e!r}")


# ---------------------------------------------------------------------------
# Tokenizer / parser
# ---------------------------------------------------------------------------

@dataclass
class _Token:
    kind: str  # NUMBER IDENT OP LPAREN RPAREN END
    text: str
    column: int
    value: float = 0.0


def _tokenize(text: str, line: int | None = None) -> list[_Token]:
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t":
            i += 1
            continue
        col = i + 1
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            while j < n and (text[j].isdigit() or text[j] == "."):
                j += 1
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    j = k
                    while j < n and text[j].isdigit():
                        j += 1
            lit = text[i:j]
            try:
                val = float(lit)
            except ValueError:
                raise CurveSyntaxError(f"bad number literal {lit!r}", line, col)
            toks.append(_Token("NUMBER", lit, col, val))
            i = j
        elif ch.isalpha():
            j = i
            while j < n and text[j].isalnum():
                j += 1
            toks.append(_Token("IDENT", text[i:j], col))
            i = j
        elif ch in "+-*/^":
            toks.append(_Token("OP", ch, col))
            i += 1
        elif ch == "(":
            toks.append(_Token("LPAREN", ch, col))
            i += 1
        elif ch == ")":
            toks.append(_Token("RPAREN", ch, col))
            i += 1
        else:
            raise CurveSyntaxError(f"unexpected character {ch!r}", line, col)
    toks.append(_Token("END", "", n + 1))
    return toks


class _Parser:
    def __init__(self, toks, line=None):
        self.toks = toks
        self.pos = 0
        self.line = line

    def peek(self):
        return self.toks[self.pos]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise CurveSyntaxError(message, self.line, tok.column)

    def parse(self) -> Expr:
        e = self.expr()
        tok = self.peek()
        if tok.kind != "END":
            self.fail(f"unexpected trailing {tok.text!r}")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek().kind == "OP" and self.peek().text in "+-":
            op = self.next().text
            e = BinOp(op, e, self.term())
        return e

    def term(self) -> Expr:
        e = self.factor()
        while self.peek().kind == "OP" and self.peek().text in "*/":
            op = self.next().text
            e = BinOp(op, e, self.factor())
        return e

    def factor(self) -> Expr:
        e = self.base()
        if self.peek().kind == "OP" and self.peek().text == "^":
            self.next()
            e = Pow(e, self.exponent())
        return e

    def exponent(self) -> float:
        sign = 1.0
        if self.peek().kind == "OP" and self.peek().text == "-":
            self.next()
            sign = -1.0
        tok = self.peek()
        if tok.kind != "NUMBER":
            self.fail("expected a numeric exponent")
        self.next()
        return sign * tok.value

    def base(self) -> Expr:
        tok = self.peek()
        if tok.kind == "NUMBER":
            self.next()
            return Const(tok.value)
        if tok.kind == "IDENT":
            self.next()
            if tok.text == "t":
                return Var()
            if tok.text in FUNCTIONS:
                if self.peek().kind != "LPAREN":
                    self.fail(f"expected '(' after {tok.text!r}")
                self.next()
                arg = self.expr()
                if self.peek().kind != "RPAREN":
                    self.fail("expected ')'")
                self.next()
                return Call(tok.text, arg)
            self.fail(f"unknown identifier {tok.text!r}", tok)
        if tok.kind == "LPAREN":
            self.next()
            e = self.expr()
            if self.peek().kind != "RPAREN":
                self.fail("expected ')'")
            self.next()
            return e
        if tok.kind == "OP" and tok.text == "-":
            self.next()
            return Neg(self.base())
        self.fail(f"expected a value, got {tok.text!r}" if tok.text else "unexpected end of expression")


def parse_expr(text: str, line: int | None = None) -> Expr:
    """Parse one component expression."""
    return _Parser(_tokenize(text, line), line).parse()


# ---------------------------------------------------------------------------
# Curve definitions
# ---------------------------------------------------------------------------

class Ambient(enum.Enum):
    R31 = "R31"
    S21 = "S21"
    S31 = "S31"

    @property
    def ncomp(self):
        return 4 if self is Ambient.S31 else 3

    @property
    def on_sphere(self):
        return self is not Ambient.R31


@dataclass(frozen=True)
class CurveDef:
    components: tuple[Expr, ...]
    ambient: Ambient
    domain: tuple[float, float]

    def __post_init__(self):
        if len(self.components) != self.ambient.ncomp:
            raise CurveSyntaxError(
                f"space {self.ambient.value} needs {self.ambient.ncomp} components, "
                f"got {len(self.components)}"
            )
        a, b = self.domain
        if not (np.isfinite(a) and np.isfinite(b) and a < b):
            raise CurveSyntaxError(f"empty or reversed domain [{a}, {b}]")

    @property
    def dim(self):
        return self.ambient.ncomp


def curve(components, ambient, domain) -> CurveDef:
    """Build a CurveDef from component expression strings."""
    if isinstance(ambient, str):
        ambient = Ambient(ambient)
    comps = tuple(parse_expr(c) if isinstance(c, str) else c for c in components)
    return CurveDef(comps, ambient, (float(domain[0]), float(domain[1])))


def parse_curve(text: str) -> CurveDef:
    """Parse a full curve file (see the module docstring for the format)."""
    fields: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise CurveSyntaxError("expected 'key = value'", lineno)
        key, value = stripped.split("=", 1)
        key = key.strip().lower()
        if key not in ("space", "x1", "x2", "x3", "x4", "domain"):
            raise CurveSyntaxError(f"unknown key {key!r}", lineno)
        if key in fields:
            raise CurveSyntaxError(f"duplicate key {key!r}", lineno)
        fields[key] = (value.strip(), lineno)

    for required in ("space", "domain"):
        if required not in fields:
            raise CurveSyntaxError(f"missing {required!r} line")

    space_text, space_line = fields["space"]
    try:
        ambient = Ambient(space_text)
    except ValueError:
        raise CurveSyntaxError(f"space must be R31, S21 or S31, got {space_text!r}", space_line)

    comps = []
    for idx in range(1, ambient.ncomp + 1):
        key = f"x{idx}"
        if key not in fields:
            raise CurveSyntaxError(f"missing component {key!r} for space {ambient.value}")
        text_i, line_i = fields[key]
        comps.append(parse_expr(text_i, line_i))
    if ambient is not Ambient.S31 and "x4" in fields:
        raise CurveSyntaxError("x4 is only allowed for space = S31", fields["x4"][1])

    dom_text, dom_line = fields["domain"]
    parts = dom_text.split()
    if len(parts) != 2:
        raise CurveSyntaxError("domain needs exactly two numbers", dom_line)
    try:
        a, b = float(parts[0]), float(parts[1])
    except ValueError:
        raise CurveSyntaxError(f"bad domain numbers {dom_text!r}", dom_line)
    return CurveDef(tuple(comps), ambient, (a, b))


def load_curve(path) -> CurveDef:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_curve(fh.read())


# ---------------------------------------------------------------------------
# Jets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Jet:
    """Plain derivatives d0..d_order of one scalar component at a parameter."""

    order: int
    coefficients: np.ndarray  # derivative values, NOT divided by factorials

    @property
    def value(self):
        return float(self.coefficients[0])

    def d(self, k):
        return float(self.coefficients[k])


def _expr_series(e: Expr, tser: np.ndarray) -> np.ndarray:
    try:
        if isinstance(e, Const):
            return taylor.constant(e.value, tser.shape[0] - 1, tser.shape[1:])
        if isinstance(e, Var):
            return tser
        if isinstance(e, Neg):
            return -_expr_series(e.arg, tser)
        if isinstance(e, BinOp):
            a = _expr_series(e.left, tser)
            b = _expr_series(e.right, tser)
            if e.op == "+":
                return taylor.add(a, b)
            if e.op == "-":
                return taylor.sub(a, b)
            if e.op == "*":
                return taylor.mul(a, b)
            return taylor.div(a, b)
        if isinstance(e, Pow):
            base = _expr_series(e.base, tser)
            if float(e.exponent).is_integer():
                return taylor.powi(base, int(e.exponent))
            return taylor.powf(base, e.exponent)
        if isinstance(e, Call):
            a = _expr_series(e.arg, tser)
            if e.func == "sin":
                return taylor.sin_cos(a)[0]
            if e.func == "cos":
                return taylor.sin_cos(a)[1]
            if e.func == "tan":
                s, c = taylor.sin_cos(a)
                return taylor.div(s, c)
            if e.func == "sinh":
                return taylor.sinh_cosh(a)[0]
            if e.func == "cosh":
                return taylor.sinh_cosh(a)[1]
            if e.func == "exp":
                return taylor.exp(a)
            if e.func == "log":
                return taylor.log(a)
            if e.func == "sqrt":
                return taylor.sqrt(a)
        raise TypeError(f"not an Expr node: {e!r}")
    except EvalDomainError as err:
        # annotate the outermost offending subexpression once
        if getattr(err, "_annotated", False):
            raise
        new = EvalDomainError(f"{err.args[0]} in {pretty(e)}")
        new._annotated = True
        raise new from None


def _check_domain(cu: CurveDef, t):
    t = np.asarray(t, dtype=float)
    a, b = cu.domain
    if np.any(t < a) or np.any(t > b):
        raise ValueError(f"parameter outside domain [{a}, {b}]")
    return t


def component_taylor(cu: CurveDef, t, order: int) -> np.ndarray:
    """Taylor coefficients of every component at t.

    Returns shape (order+1, ncomp) for scalar t, (order+1, ncomp, N) for a
    batch array t.
    """
    if order < 0 or order > MAX_JET_ORDER:
        raise ValueError(f"jet order must be in 0..{MAX_JET_ORDER}")
    t = _check_domain(cu, t)
    tser = taylor.variable(t, order)
    cols = [_expr_series(c, tser) for c in cu.components]
    out = np.stack(cols, axis=1)
    if not np.all(np.isfinite(out)):
        raise EvalDomainError("non-finite jet coefficients")
    return out


def eval_jet(cu: CurveDef, t: float, order: int) -> list[Jet]:
    """Exact derivative jets d0..d_order for every component at scalar t."""
    coeffs = component_taylor(cu, float(t), order)
    derivs = taylor.derivatives(coeffs)
    return [Jet(order, derivs[:, i].copy()) for i in range(coeffs.shape[1])]


def position(cu: CurveDef, t) -> np.ndarray:
    """Curve point(s) at t; shape (ncomp,) or (ncomp, N)."""
    return component_taylor(cu, t, 0)[0]


@dataclass(frozen=True)
class OnSphereReport:
    ok: bool
    worst_residual: float
    worst_t: float


def validate_on_sphere(cu: CurveDef, sample_count: int = 256, tol: float = 1e-9) -> OnSphereReport:
    """Check max_t |<gamma, gamma> - 1| over uniform samples of the domain."""
    if not cu.ambient.on_sphere:
        raise ValueError("validate_on_sphere applies to S21/S31 curves only")
    ts = np.linspace(cu.domain[0], cu.domain[1], sample_count)
    g = position(cu, ts)
    res = np.abs(mdot(g, g) - 1.0)
    i = int(np.argmax(res))
    return OnSphereReport(bool(res[i] <= tol), float(res[i]), float(ts[i]))
