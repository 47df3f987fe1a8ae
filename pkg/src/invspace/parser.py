"""Surface syntax: a recursive-descent parser and the canonical printer.

Expressions::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('+' | '-') unary | power
    power   := primary ('^' exponent)?
    primary := INT | 'i' | 'n' | 't' | 'exp' '(' expr ')' | unknown | '(' expr ')'
    unknown := 'y' '[' expr ']' | 'y' "'"* | 'y' '^' '(' INT ')'

In sequence mode ``c^n`` (``c`` constant) is an exponential term; in
function mode exponentials are written ``exp(c*t)``.  Equations are
``lhs = rhs`` where both sides are linear in ``y`` with constant
coefficients; an optional ``; roots=l1^m1,l2^m2`` suffix supplies the
operator's factored form.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError, RootsMismatchError
from .poly import Poly, from_factored
from .polyexp import OperatorBase, OperatorSpec, PolyExp, apply_shift
from .scalar import ONE, ZERO, I, GaussianRational, format_scalar

__all__ = [
    "tokenize",
    "parse_ast",
    "parse_expression",
    "parse_equation",
    "parse_roots",
    "parse_scalar_list",
    "format_poly",
    "format_polyexp",
    "format_operator",
]


# -- tokens -------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # INT, NAME, OP, END
    text: str
    pos: int


_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()\[\]=,;']))")


def _byte_offset(src: str, pos: int) -> int:
    return len(src[:pos].encode("utf-8"))


def _error(src: str, pos: int, message: str, hint: str = "") -> ParseError:
    return ParseError(message, src, _byte_offset(src, pos), hint)


def tokenize(src: str) -> list[Token]:
    tokens = []
    pos = 0
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos >= len(src):
            break
        m = _TOKEN_RE.match(src, pos)
        if m is None or m.end() == pos:
            raise _error(src, pos, f"unexpected character {src[pos]!r}")
        start = m.start(m.lastgroup)
        if m.group("int") is not None:
            tokens.append(Token("INT", m.group("int"), start))
        elif m.group("name") is not None:
            tokens.append(Token("NAME", m.group("name"), start))
        else:
            tokens.append(Token("OP", m.group("op"), start))
        pos = m.end()
    tokens.append(Token("END", "", len(src)))
    return tokens


# -- syntax tree --------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int
    pos: int


@dataclass(frozen=True)
class Imag:
    pos: int


@dataclass(frozen=True)
class Var:
    name: str
    pos: int


@dataclass(frozen=True)
class Unary:
    op: str
    operand: object
    pos: int


@dataclass(frozen=True)
class Binary:
    op: str
    left: object
    right: object
    pos: int


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: object
    pos: int


@dataclass(frozen=True)
class Exp:
    arg: object
    pos: int


@dataclass(frozen=True)
class Unknown:
    """``y[index]`` (shift), or ``y`` with ``order`` derivatives."""

    index: object | None
    order: int
    pos: int


@dataclass(frozen=True)
class Equation:
    lhs: object
    rhs: object
    pos: int


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind == "OP" and self.tok.text == text

    def expect(self, text: str, hint: str = "") -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise _error(self.src, self.tok.pos, f"expected {text!r}, found {found!r}", hint)
        return self.advance()

    def parse_top(self, allow_equation: bool):
        node = self.expr()
        if allow_equation and self.at("="):
            pos = self.advance().pos
            node = Equation(node, self.expr(), pos)
        if self.tok.kind != "END":
            hint = "use '*' for multiplication" if self.tok.kind in ("INT", "NAME") or self.at("(") else ""
            raise _error(self.src, self.tok.pos, f"unexpected {self.tok.text!r}", hint)
        return node

    def expr(self):
        node = self.term()
        while self.at("+") or self.at("-"):
            t = self.advance()
            node = Binary(t.text, node, self.term(), t.pos)
        return node

    def term(self):
        node = self.unary()
        while self.at("*") or self.at("/"):
            t = self.advance()
            node = Binary(t.text, node, self.unary(), t.pos)
        return node

    def unary(self):
        if self.at("-") or self.at("+"):
            t = self.advance()
            return Unary(t.text, self.unary(), t.pos)
        return self.power()

    def power(self):
        node = self.primary()
        if self.at("^"):
            t = self.advance()
            node = Pow(node, self.exponent(), t.pos)
            if self.at("^"):
                raise _error(self.src, self.tok.pos, "chained powers are ambiguous", "add parentheses")
        return node

    def exponent(self):
        if self.at("-"):
            t = self.advance()
            return Unary("-", self.primary(), t.pos)
        return self.primary()

    def primary(self):
        t = self.tok
        if t.kind == "INT":
            self.advance()
            return Num(int(t.text), t.pos)
        if t.kind == "NAME":
            self.advance()
            if t.text == "i":
                return Imag(t.pos)
            if t.text in ("n", "t"):
                return Var(t.text, t.pos)
            if t.text == "exp":
                self.expect("(", "write exponentials as exp(c*t)")
                arg = self.expr()
                self.expect(")")
                return Exp(arg, t.pos)
            if t.text == "y":
                return self.unknown(t)
            raise _error(self.src, t.pos, f"unknown name {t.text!r}",
                         "variables are n (sequences) and t (functions)")
        if self.at("("):
            self.advance()
            node = self.expr()
            self.expect(")", "unbalanced parenthesis")
            return node
        found = t.text or "end of input"
        raise _error(self.src, t.pos, f"unexpected {found!r}")

    def unknown(self, t: Token):
        if self.at("["):
            self.advance()
            index = self.expr()
            self.expect("]")
            return Unknown(index, 0, t.pos)
        order = 0
        while self.at("'"):
            self.advance()
            order += 1
        if order == 0 and self.at("^") and self.tokens[self.i + 1].text == "(":
            self.advance()
            self.advance()
            if self.tok.kind != "INT":
                raise _error(self.src, self.tok.pos, "derivative order must be an integer")
            order = int(self.advance().text)
            self.expect(")")
        return Unknown(None, order, t.pos)


def parse_ast(src: str, allow_equation: bool = False):
    """Syntax tree of an expression (or equation when allowed)."""
    return _Parser(src).parse_top(allow_equation)


# -- evaluation ---------------------------------------------------------------


def _constant_value(f: PolyExp, base: OperatorBase) -> GaussianRational | None:
    if f.is_zero():
        return ZERO
    if len(f.terms) == 1 and f.terms[0][0] == base.unit_lambda and f.terms[0][1].degree == 0:
        return f.terms[0][1][0]
    return None


class _Evaluator:
    def __init__(self, src: str, base: OperatorBase):
        self.src = src
        self.base = base

    def err(self, node, message, hint=""):
        return _error(self.src, node.pos, message, hint)

    def const(self, c) -> PolyExp:
        return PolyExp.constant(c, self.base)

    def eval(self, node) -> PolyExp:
        if isinstance(node, Num):
            return self.const(node.value)
        if isinstance(node, Imag):
            return self.const(I)
        if isinstance(node, Var):
            if node.name != self.base.variable:
                other = "sequence" if node.name == "n" else "function"
                raise self.err(node, f"variable {node.name!r} belongs to {other} mode",
                               f"use {self.base.variable!r} here")
            return PolyExp([(self.base.unit_lambda, Poly([0, 1]))])
        if isinstance(node, Unary):
            v = self.eval(node.operand)
            return -v if node.op == "-" else v
        if isinstance(node, Binary):
            a, b = self.eval(node.left), self.eval(node.right)
            if node.op == "+":
                return a + b
            if node.op == "-":
                return a - b
            if node.op == "*":
                return a.multiply(b, self.base)
            c = _constant_value(b, self.base)
            if c is None:
                raise self.err(node, "can only divide by a constant")
            if not c:
                raise self.err(node, "division by zero")
            return a.scale(c.inverse())
        if isinstance(node, Pow):
            return self.power(node)
        if isinstance(node, Exp):
            if self.base is not OperatorBase.DERIVATIVE:
                raise self.err(node, "exp() is only valid in function mode", "write c^n for sequences")
            arg = self.eval(node.arg)
            if arg.is_zero():
                return self.const(ONE)
            p = arg.poly_at(ZERO)
            if len(arg.terms) != 1 or p.degree != 1 or p[0]:
                raise self.err(node, "exp() argument must be a constant times t", "e.g. exp(2*t)")
            return PolyExp([(p[1], Poly.constant(ONE))])
        if isinstance(node, Unknown):
            raise self.err(node, "the unknown y is not allowed in an expression")
        raise self.err(node, "unsupported construct")

    def power(self, node: Pow) -> PolyExp:
        if isinstance(node.exponent, Var) and self.base is OperatorBase.DERIVATIVE:
            raise self.err(node, "variable exponents are not allowed in function mode",
                           "write exponentials as exp(c*t)")
        base_val = self.eval(node.base)
        exp_val = self.eval(node.exponent)
        k = _constant_value(exp_val, self.base)
        if k is not None:
            if not k.is_integer():
                raise self.err(node, "exponents must be integers")
            k = int(k.re)
            if k < 0:
                c = _constant_value(base_val, self.base)
                if c is None or not c:
                    raise self.err(node, "negative powers need a nonzero constant base")
                return self.const(c ** k)
            result = self.const(ONE)
            for _ in range(k):
                result = result.multiply(base_val, self.base)
            return result
        if self.base is OperatorBase.SHIFT:
            # c^(n + k) with integer k
            p = exp_val.poly_at(ONE)
            if len(exp_val.terms) == 1 and p.degree == 1 and p[1] == ONE and p[0].is_integer():
                c = _constant_value(base_val, self.base)
                if c is None:
                    raise self.err(node, "the base of c^n must be a constant")
                k = int(p[0].re)
                if not c and k < 0:
                    raise self.err(node, "0 cannot be raised to a negative power")
                return PolyExp([(c, Poly.constant(c ** k))])
        hint = ("exponents are integers, or n in sequence mode" if self.base is OperatorBase.SHIFT
                else "use exp(c*t) for exponentials")
        raise self.err(node, "unsupported exponent", hint)


def parse_expression(src: str, domain) -> PolyExp:
    """Canonical :class:`PolyExp` denoted by ``src`` in the given mode."""
    base = OperatorBase.parse(domain)
    return _Evaluator(src, base).eval(parse_ast(src))


# -- equations ----------------------------------------------------------------


def _walk(node):
    yield node
    for attr in ("operand", "left", "right", "base", "exponent", "arg", "lhs", "rhs", "index"):
        child = getattr(node, attr, None)
        if child is not None and not isinstance(child, (str, int)):
            yield from _walk(child)


class _LinearEvaluator(_Evaluator):
    """Evaluates a side of an equation to ``({order: coeff}, forcing)``."""

    def linear(self, node):
        if isinstance(node, Unknown):
            return {self.order_of(node): ONE}, PolyExp()
        if isinstance(node, Unary):
            ops, f = self.linear(node.operand)
            if node.op == "-":
                return {k: -c for k, c in ops.items()}, -f
            return ops, f
        if isinstance(node, Binary):
            lo, lf = self.linear(node.left)
            ro, rf = self.linear(node.right)
            if node.op in "+-":
                sign = ONE if node.op == "+" else -ONE
                ops = dict(lo)
                for k, c in ro.items():
                    ops[k] = ops.get(k, ZERO) + sign * c
                return ops, lf + rf.scale(sign)
            if node.op == "*":
                if lo and ro:
                    raise self.err(node, "equation is not linear in y")
                if lo or ro:
                    ops, factor = (lo, rf) if lo else (ro, lf)
                    c = _constant_value(factor, self.base)
                    if c is None:
                        raise self.err(node, "coefficients of y must be constants",
                                       "variable coefficients are not supported")
                    return {k: c * v for k, v in ops.items()}, lf.multiply(rf, self.base)
                return {}, lf.multiply(rf, self.base)
            if ro:
                raise self.err(node, "cannot divide by y")
            c = _constant_value(rf, self.base)
            if c is None or not c:
                raise self.err(node, "can only divide by a nonzero constant")
            inv = c.inverse()
            return {k: v * inv for k, v in lo.items()}, lf.scale(inv)
        if any(isinstance(n, Unknown) for n in _walk(node)):
            raise self.err(node, "y may only appear linearly with constant coefficients")
        return {}, self.eval(node)

    def order_of(self, node: Unknown) -> int:
        if node.index is None:
            return node.order
        idx = _Evaluator(self.src, OperatorBase.SHIFT).eval(node.index)
        p = idx.poly_at(ONE)
        if len(idx.terms) != 1 or p.degree != 1 or p[1] != ONE or not p[0].is_integer():
            raise self.err(node, "sequence index must look like n+k with integer k", "e.g. y[n+2]")
        return int(p[0].re)


def parse_roots(text: str) -> list[tuple[GaussianRational, int]]:
    """Parse ``l1^m1,l2^m2,...``; a missing ``^m`` means multiplicity 1."""
    roots = []
    for item in _split_top_level(text, ","):
        item_text = item.strip()
        if not item_text:
            raise ParseError("empty root entry", text, _byte_offset(text, text.find(item)))
        lam_text, mult = item_text, 1
        m = re.fullmatch(r"(.*)\^\s*(\d+)\s*", item_text, re.S)
        if m and _balanced(m.group(1)):
            lam_text, mult = m.group(1), int(m.group(2))
        lam = _constant_value(parse_expression(lam_text, OperatorBase.SHIFT), OperatorBase.SHIFT)
        if lam is None:
            raise ParseError(f"root {lam_text!r} is not a constant", text, 0)
        if mult < 1:
            raise ParseError("multiplicity must be positive", text, 0)
        roots.append((lam, mult))
    return roots


def parse_scalar_list(text: str) -> list[GaussianRational]:
    """Comma-separated constants, e.g. ``1, 2, -1/2+i``."""
    out = []
    for item in _split_top_level(text, ","):
        if not item.strip():
            continue
        c = _constant_value(parse_expression(item, OperatorBase.SHIFT), OperatorBase.SHIFT)
        if c is None:
            raise ParseError(f"{item.strip()!r} is not a constant", text, 0)
        out.append(c)
    return out


def _balanced(s: str) -> bool:
    depth = 0
    for ch in s:
        depth += ch == "("
        depth -= ch == ")"
        if depth < 0:
            return False
    return depth == 0


def _split_top_level(text: str, sep: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for k, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append(text[start:k])
            start = k + 1
    parts.append(text[start:])
    return parts


def parse_equation(src: str, roots=None) -> tuple[OperatorSpec, PolyExp]:
    """Operator and right-hand side of ``lhs = rhs``.

    ``roots`` (text or ``(lam, mult)`` pairs) attaches a factored form,
    which must reproduce the parsed coefficients exactly.
    """
    body = src
    if ";" in src:
        body, _, tail = src.partition(";")
        tail = tail.strip()
        if not tail.startswith("roots="):
            raise _error(src, len(body) + 1, "unknown equation option", "expected roots=l1^m1,...")
        if roots is not None:
            raise _error(src, len(body) + 1, "roots given twice")
        roots = tail[len("roots="):]

    tree = parse_ast(body, allow_equation=True)
    if not isinstance(tree, Equation):
        raise _error(src, len(body), "expected an equation 'lhs = rhs'")
    unknowns = [n for n in _walk(tree) if isinstance(n, Unknown)]
    if not unknowns:
        raise _error(src, 0, "equation does not mention the unknown y")
    shift_style = {n.index is not None for n in unknowns}
    if len(shift_style) > 1:
        bad = next(n for n in unknowns if n.index is None)
        raise _error(src, bad.pos, "cannot mix y[n+k] with y, y', ...")
    base = OperatorBase.SHIFT if shift_style.pop() else OperatorBase.DERIVATIVE

    ev = _LinearEvaluator(body, base)
    lops, lf = ev.linear(tree.lhs)
    rops, rf = ev.linear(tree.rhs)
    ops = dict(lops)
    for k, c in rops.items():
        ops[k] = ops.get(k, ZERO) - c
    forcing = rf - lf
    ops = {k: c for k, c in ops.items() if c}
    if not ops:
        raise _error(src, tree.pos, "the terms in y cancel out")
    low = min(ops)
    if low < 0:
        for _ in range(-low):
            forcing = apply_shift(forcing)
        ops = {k - low: c for k, c in ops.items()}
    expanded = Poly([ops.get(k, ZERO) for k in range(max(ops) + 1)])

    if roots is None:
        return OperatorSpec(base, expanded), forcing
    if isinstance(roots, str):
        roots = parse_roots(roots)
    factored = tuple(roots)
    try:
        candidate = from_factored(factored, expanded.leading())
    except ValueError as exc:
        raise RootsMismatchError(str(exc)) from exc
    if candidate != expanded:
        raise RootsMismatchError(
            f"roots give {format_poly(candidate, 'x')} but the equation has {format_poly(expanded, 'x')}"
        )
    return OperatorSpec(base, expanded, factored, expanded.leading()), forcing


# -- printing -----------------------------------------------------------------


def _is_negative(c: GaussianRational) -> bool:
    return c.re < 0 if c.im == 0 else (c.re == 0 and c.im < 0)


def format_poly(p: Poly, var: str) -> str:
    """Canonical text, highest degree first: ``n^2 - 3*n + 2``."""
    if p.is_zero():
        return "0"
    out = []
    for j in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[j]
        if not c:
            continue
        mono = "" if j == 0 else var if j == 1 else f"{var}^{j}"
        if c.re and c.im:
            negative = False
            ctext = f"({format_scalar(c)})"
            body = ctext if j == 0 else f"{ctext}*{mono}"
        else:
            negative = _is_negative(c)
            mag = -c if negative else c
            if j == 0:
                body = format_scalar(mag)
            elif mag == ONE:
                body = mono
            else:
                body = f"{format_scalar(mag)}*{mono}"
        if not out:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f" - {body}" if negative else f" + {body}")
    return "".join(out)


def _exp_text(lam: GaussianRational, base: OperatorBase) -> str:
    if base is OperatorBase.SHIFT:
        text = format_scalar(lam)
        if not (lam.is_integer() and lam.re >= 0):
            text = f"({text})"
        return f"{text}^n"
    if lam == ONE:
        return "exp(t)"
    if lam == -ONE:
        return "exp(-t)"
    if lam.re and lam.im:
        return f"exp(({format_scalar(lam)})*t)"
    return f"exp({format_scalar(lam)}*t)"


def format_polyexp(f: PolyExp, base) -> str:
    """Canonical text: ``(p(n))*l^n + ...`` or ``(p(t))*exp(l*t) + ...``."""
    base = OperatorBase.parse(base)
    if f.is_zero():
        return "0"
    var = base.variable
    pieces = []
    for lam, p in f.terms:
        if lam == base.unit_lambda:
            text = format_poly(p, var)
            if len(f.terms) > 1 and sum(1 for c in p.coeffs if c) > 1:
                text = f"({text})"
            pieces.append(text)
        elif p == Poly.constant(ONE):
            pieces.append(_exp_text(lam, base))
        else:
            text = format_poly(p, var)
            if not (text.startswith("(") and text.endswith(")") and _balanced(text[1:-1])):
                text = f"({text})"
            pieces.append(f"{text}*{_exp_text(lam, base)}")
    return " + ".join(pieces).replace(" + -", " - ")


def format_operator(op: OperatorSpec) -> str:
    """Left-hand side text, e.g. ``y[n+2] - 5*y[n+1] + 6*y[n]`` or ``y'' + y``."""
    terms = []
    for k in range(len(op.expanded.coeffs) - 1, -1, -1):
        c = op.expanded.coeffs[k]
        if not c:
            continue
        if op.base is OperatorBase.SHIFT:
            unknown = f"y[n+{k}]" if k else "y[n]"
        else:
            unknown = "y" + "'" * k if k <= 3 else f"y^({k})"
        terms.append((c, unknown))
    out = []
    for c, unknown in terms:
        if c.re and c.im:
            body, negative = f"({format_scalar(c)})*{unknown}", False
        else:
            negative = _is_negative(c)
            mag = -c if negative else c
            body = unknown if mag == ONE else f"{format_scalar(mag)}*{unknown}"
        if not out:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f" - {body}" if negative else f" + {body}")
    return "".join(out)
