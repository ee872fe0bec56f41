"""Closed-form expression trees over omega.

Grammar (whitespace-insensitive, locale-independent)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := ("+" | "-") unary | power
    power   := atom (("^" | "**") ["+" | "-"] INTEGER)?
    atom    := NUMBER ["i" | "j"] | "i" | "w" | "logw" | "@" NAME
             | "exp" "(" expr ")" | "(" expr ")"

``w`` is omega, ``logw`` the principal log of omega and ``@NAME`` a named
series leaf supplied by the caller. Only integer powers exist, so every tree
is single-valued away from the branch cut of ``logw``.

Every node evaluates to ``(log_mag, arg)`` arrays. ``exp`` never
exponentiates: it maps ``u`` to ``log_mag = Re(u)``, ``arg = Im(u)``.
"""

from __future__ import annotations

import re
from abc import ABC, abstractmethod
from collections.abc import Mapping
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike

from .errors import ExpressionSyntaxError, UnsupportedNode
from .log_complex import (
    FloatArray,
    from_log_arrays,
    log_add_arrays,
    to_log_arrays,
    wrap_angles,
)
from .series import PowerSeries

LogPair = tuple[FloatArray, FloatArray]


@dataclass(frozen=True)
class EvalContext:
    """Evaluation points plus their log-polar form, computed once per call."""

    omega: np.ndarray
    log_r: FloatArray = field(init=False)
    theta: FloatArray = field(init=False)

    def __post_init__(self) -> None:
        log_r, theta = to_log_arrays(self.omega)
        object.__setattr__(self, "log_r", log_r)
        object.__setattr__(self, "theta", theta)


class Node(ABC):
    """Base expression node."""

    @abstractmethod
    def evaluate(self, ctx: EvalContext) -> LogPair:
        raise NotImplementedError

    @abstractmethod
    def render(self) -> str:
        raise NotImplementedError

    def derivative(self) -> Node:
        """d/d(omega) of this node."""
        message = f"no derivative rule for node {type(self).__name__}"
        raise UnsupportedNode(message)

    def leaves(self) -> list[SeriesLeaf]:
        return []

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True, eq=False)
class Const(Node):
    value: complex

    def evaluate(self, ctx: EvalContext) -> LogPair:
        l, t = to_log_arrays(complex(self.value))
        shape = ctx.omega.shape
        return np.full(shape, float(l)), np.full(shape, float(t))

    def derivative(self) -> Node:
        return ZERO

    def render(self) -> str:
        v = complex(self.value)
        if v.imag == 0:
            return repr(v.real)
        if v.real == 0:
            return f"{v.imag!r}i"
        return f"({v.real!r}+{v.imag!r}i)"


@dataclass(frozen=True, eq=False)
class Omega(Node):
    def evaluate(self, ctx: EvalContext) -> LogPair:
        return ctx.log_r.copy(), ctx.theta.copy()

    def derivative(self) -> Node:
        return ONE

    def render(self) -> str:
        return "w"


@dataclass(frozen=True, eq=False)
class Add(Node):
    left: Node
    right: Node

    def evaluate(self, ctx: EvalContext) -> LogPair:
        l1, t1 = self.left.evaluate(ctx)
        l2, t2 = self.right.evaluate(ctx)
        return log_add_arrays(l1, t1, l2, t2)

    def derivative(self) -> Node:
        return add(self.left.derivative(), self.right.derivative())

    def render(self) -> str:
        return f"({self.left.render()} + {self.right.render()})"

    def leaves(self) -> list[SeriesLeaf]:
        return self.left.leaves() + self.right.leaves()


@dataclass(frozen=True, eq=False)
class Mul(Node):
    left: Node
    right: Node

    def evaluate(self, ctx: EvalContext) -> LogPair:
        l1, t1 = self.left.evaluate(ctx)
        l2, t2 = self.right.evaluate(ctx)
        with np.errstate(invalid="ignore"):
            out_l = l1 + l2
        zero = np.isneginf(l1) | np.isneginf(l2)
        out_l = np.where(zero, -np.inf, out_l)
        return out_l, np.where(zero, 0.0, wrap_angles(t1 + t2))

    def derivative(self) -> Node:
        return add(
            mul(self.left.derivative(), self.right),
            mul(self.left, self.right.derivative()),
        )

    def render(self) -> str:
        return f"{self.left.render()} * {self.right.render()}"

    def leaves(self) -> list[SeriesLeaf]:
        return self.left.leaves() + self.right.leaves()


@dataclass(frozen=True, eq=False)
class Div(Node):
    numerator: Node
    denominator: Node

    def evaluate(self, ctx: EvalContext) -> LogPair:
        l1, t1 = self.numerator.evaluate(ctx)
        l2, t2 = self.denominator.evaluate(ctx)
        with np.errstate(invalid="ignore"):
            out_l = l1 - l2
        out_l = np.where(np.isneginf(l1) & np.isfinite(l2), -np.inf, out_l)
        out_l = np.where(np.isfinite(l1) & np.isneginf(l2), np.inf, out_l)
        return out_l, np.where(np.isfinite(out_l), wrap_angles(t1 - t2), 0.0)

    def derivative(self) -> Node:
        d_num = self.numerator.derivative()
        d_den = self.denominator.derivative()
        if is_zero(d_den):
            return div(d_num, self.denominator)
        top = add(mul(d_num, self.denominator), neg(mul(self.numerator, d_den)))
        return div(top, Pow(self.denominator, 2))

    def render(self) -> str:
        return f"({self.numerator.render()}) / ({self.denominator.render()})"

    def leaves(self) -> list[SeriesLeaf]:
        return self.numerator.leaves() + self.denominator.leaves()


@dataclass(frozen=True, eq=False)
class Pow(Node):
    base: Node
    exponent: int

    def evaluate(self, ctx: EvalContext) -> LogPair:
        if self.exponent == 0:
            shape = ctx.omega.shape
            return np.zeros(shape), np.zeros(shape)
        l, t = self.base.evaluate(ctx)
        with np.errstate(invalid="ignore"):
            out_l = l * self.exponent
        return out_l, np.where(np.isfinite(out_l), wrap_angles(t * self.exponent), 0.0)

    def derivative(self) -> Node:
        if self.exponent == 0:
            return ZERO
        return mul(mul(Const(self.exponent), power(self.base, self.exponent - 1)), self.base.derivative())

    def render(self) -> str:
        return f"({self.base.render()})^{self.exponent}"

    def leaves(self) -> list[SeriesLeaf]:
        return self.base.leaves()


@dataclass(frozen=True, eq=False)
class Exp(Node):
    argument: Node

    def evaluate(self, ctx: EvalContext) -> LogPair:
        l, t = self.argument.evaluate(ctx)
        # u = e^l (cos t + i sin t); exp(u) has log|.| = Re u and arg = Im u.
        with np.errstate(over="ignore", invalid="ignore"):
            modulus = np.exp(l)
            re_u = np.where(np.isneginf(l), 0.0, modulus * np.cos(t))
            im_u = np.where(np.isneginf(l), 0.0, modulus * np.sin(t))
        return re_u, wrap_angles(im_u)

    def derivative(self) -> Node:
        return mul(self, self.argument.derivative())

    def render(self) -> str:
        return f"exp({self.argument.render()})"

    def leaves(self) -> list[SeriesLeaf]:
        return self.argument.leaves()


@dataclass(frozen=True, eq=False)
class LogOmega(Node):
    def evaluate(self, ctx: EvalContext) -> LogPair:
        # log(omega) = log|omega| + i arg(omega), principal branch.
        return to_log_arrays(ctx.log_r + 1j * ctx.theta)

    def derivative(self) -> Node:
        return Pow(Omega(), -1)

    def render(self) -> str:
        return "logw"


@dataclass(frozen=True, eq=False)
class SeriesLeaf(Node):
    """A power series embedded in a closed form (``@name`` in the grammar)."""

    series: PowerSeries
    label: str = "g"

    def evaluate(self, ctx: EvalContext) -> LogPair:
        return self.series.evaluate(ctx.omega)

    def derivative(self) -> Node:
        return SeriesLeaf(self.series.derivative(), f"{self.label}'")

    def z_derivative(self) -> SeriesLeaf:
        return SeriesLeaf(self.series.z_derivative(), f"D{self.label}")

    def render(self) -> str:
        return f"@{self.label}"

    def leaves(self) -> list[SeriesLeaf]:
        return [self]


ZERO = Const(0)
ONE = Const(1)


# ── Pruning constructors ─────────────────────────────────────────────────


def is_zero(node: Node) -> bool:
    return isinstance(node, Const) and complex(node.value) == 0


def is_one(node: Node) -> bool:
    return isinstance(node, Const) and complex(node.value) == 1


def add(a: Node, b: Node) -> Node:
    if is_zero(a):
        return b
    if is_zero(b):
        return a
    return Add(a, b)


def mul(a: Node, b: Node) -> Node:
    if is_zero(a) or is_zero(b):
        return ZERO
    if is_one(a):
        return b
    if is_one(b):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(complex(a.value) * complex(b.value))
    return Mul(a, b)


def div(a: Node, b: Node) -> Node:
    if is_zero(a):
        return ZERO
    if is_one(b):
        return a
    return Div(a, b)


def neg(a: Node) -> Node:
    if isinstance(a, Const):
        return Const(-complex(a.value))
    return mul(Const(-1), a)


def power(base: Node, exponent: int) -> Node:
    if exponent == 0:
        return ONE
    if exponent == 1:
        return base
    return Pow(base, exponent)


OMEGA_SQUARED = Pow(Omega(), 2)


def z_derivative(node: Node) -> Node:
    """d/dz of a tree, realized as omega^2 d/d(omega)."""
    if isinstance(node, SeriesLeaf):
        return node.z_derivative()
    if isinstance(node, Const):
        return ZERO
    return mul(OMEGA_SQUARED, node.derivative())


def evaluate(node: Node, omega: ArrayLike) -> LogPair:
    """Evaluate ``node`` at the given omega values."""
    points = np.asarray(omega, dtype=np.complex128)
    return node.evaluate(EvalContext(points))


def evaluate_complex(node: Node, omega: ArrayLike) -> np.ndarray:
    """Convenience: evaluate and convert to native complex."""
    return from_log_arrays(*evaluate(node, omega))


# ── Parser ───────────────────────────────────────────────────────────────

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)(?P<imag>[ij](?![A-Za-z_0-9]))?"
    r"|(?P<ref>@[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[-+*/^()])"
    r")"
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    position: int
    imaginary: bool = False


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            message = f"unexpected character {text[pos:].strip()[0]!r} at {pos}"
            raise ExpressionSyntaxError(message, pos)
        kind = match.lastgroup or ""
        if kind == "imag":
            kind = "number"
        value = match.group(kind)
        start = match.start(kind)
        if kind == "op" and value == "**":
            value = "^"
        tokens.append(_Token(kind, value, start, imaginary=bool(match.group("imag"))))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str, leaves: Mapping[str, PowerSeries]) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0
        self.leaves = leaves

    def peek(self) -> _Token | None:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def take(self) -> _Token:
        token = self.peek()
        if token is None:
            message = f"unexpected end of expression {self.text!r}"
            raise ExpressionSyntaxError(message, len(self.text))
        self.index += 1
        return token

    def expect(self, text: str) -> None:
        token = self.take()
        if token.text != text:
            message = f"expected {text!r} at {token.position}, found {token.text!r}"
            raise ExpressionSyntaxError(message, token.position)

    def parse(self) -> Node:
        if not self.tokens:
            message = "empty expression"
            raise ExpressionSyntaxError(message, 0)
        node = self.expr()
        token = self.peek()
        if token is not None:
            message = f"unexpected {token.text!r} at {token.position}"
            raise ExpressionSyntaxError(message, token.position)
        return node

    def expr(self) -> Node:
        node = self.term()
        while (token := self.peek()) is not None and token.text in "+-" and token.kind == "op":
            self.take()
            right = self.term()
            node = Add(node, right) if token.text == "+" else Add(node, neg(right))
        return node

    def term(self) -> Node:
        node = self.unary()
        while (token := self.peek()) is not None and token.kind == "op" and token.text in "*/":
            self.take()
            right = self.unary()
            node = Mul(node, right) if token.text == "*" else Div(node, right)
        return node

    def unary(self) -> Node:
        token = self.peek()
        if token is not None and token.kind == "op" and token.text in "+-":
            self.take()
            operand = self.unary()
            return operand if token.text == "+" else neg(operand)
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        token = self.peek()
        if token is None or token.text != "^":
            return base
        self.take()
        sign = 1
        token = self.take()
        if token.kind == "op" and token.text in "+-":
            sign = -1 if token.text == "-" else 1
            token = self.take()
        if token.kind != "number" or token.imaginary or not token.text.isdigit():
            message = f"exponent at {token.position} must be an integer, got {token.text!r}"
            raise ExpressionSyntaxError(message, token.position)
        return Pow(base, sign * int(token.text))

    def atom(self) -> Node:
        token = self.take()
        if token.kind == "number":
            value = float(token.text)
            return Const(complex(0.0, value) if token.imaginary else complex(value, 0.0))
        if token.kind == "ref":
            label = token.text[1:]
            if label not in self.leaves:
                message = f"unknown series leaf {token.text!r} at {token.position}"
                raise ExpressionSyntaxError(message, token.position)
            return SeriesLeaf(self.leaves[label], label)
        if token.kind == "name":
            name = token.text
            if name == "w":
                return Omega()
            if name == "logw":
                return LogOmega()
            if name in ("i", "j"):
                return Const(1j)
            if name == "exp":
                self.expect("(")
                inner = self.expr()
                self.expect(")")
                return Exp(inner)
            message = f"unknown name {name!r} at {token.position}"
            raise ExpressionSyntaxError(message, token.position)
        if token.text == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        message = f"unexpected {token.text!r} at {token.position}"
        raise ExpressionSyntaxError(message, token.position)


def parse_expression(text: str, leaves: Mapping[str, PowerSeries] | None = None) -> Node:
    """Parse a closed-form expression string.

    Raises:
        ExpressionSyntaxError: on any lexical or grammatical problem.
    """
    return _Parser(text, leaves or {}).parse()


def contains_division(node: Node) -> bool:
    """True when the tree may have poles (a division or a negative power)."""
    if isinstance(node, Div):
        return True
    if isinstance(node, Pow):
        return node.exponent < 0 or contains_division(node.base)
    if isinstance(node, (Add, Mul)):
        return contains_division(node.left) or contains_division(node.right)
    if isinstance(node, Exp):
        return contains_division(node.argument)
    if isinstance(node, LogOmega):
        return True
    return False


__all__ = [
    "ONE",
    "ZERO",
    "Add",
    "Const",
    "Div",
    "EvalContext",
    "Exp",
    "LogOmega",
    "Mul",
    "Node",
    "Omega",
    "Pow",
    "SeriesLeaf",
    "add",
    "contains_division",
    "div",
    "evaluate",
    "evaluate_complex",
    "mul",
    "neg",
    "parse_expression",
    "power",
    "z_derivative",
]
