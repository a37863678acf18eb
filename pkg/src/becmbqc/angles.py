"""Angle expressions such as ``pi/4``, ``-3*pi/2`` or ``0.25``."""
from __future__ import annotations

import ast
import math
import operator

from .errors import ValidationError

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
}
_UNARY = {ast.UAdd: operator.pos, ast.USub: operator.neg}


def parse_angle(text: str | float | int) -> float:
    """Evaluate a real-valued expression over numbers, ``pi`` and + - * / ( )."""
    if isinstance(text, (int, float)):
        return float(text)
    try:
        tree = ast.parse(str(text).strip(), mode="eval")
    except SyntaxError as exc:
        raise ValidationError(f"bad angle expression {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
            return _UNARY[type(node.op)](ev(node.operand))
        raise ValidationError(f"bad angle expression {text!r}")

    try:
        value = ev(tree)
    except ZeroDivisionError as exc:
        raise ValidationError(f"division by zero in {text!r}") from exc
    if not math.isfinite(value):
        raise ValidationError(f"angle {text!r} is not finite")
    return value


def parse_range(text: str) -> list[int]:
    """``1..8`` (inclusive) or a comma list ``1,3,5``."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ValidationError(f"bad integer range {text!r}") from exc
    if not values:
        raise ValidationError(f"empty range {text!r}")
    return values
