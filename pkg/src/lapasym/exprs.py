"""Declarative expression trees for model configuration files.

A model config describes its scalar maps as nested prefix lists that
survive a round trip through JSON, for example::

    ["*", "w0", ["+", "x0", ["*", "1/2", ["pow", "x0", 3]]]]

Leaves are numbers (``int``/``float``), exact rational strings such as
``"1/2"``, the constant ``"pi"``, or symbol names (``x0``, ``w0``,
``s``, ...) resolved against an environment mapping at call time.
Interior nodes are ``[op, arg, ...]`` with operators

======== ======================================================
``+ *``  n-ary sum / product (at least two arguments)
``-``    unary negation or binary difference
``/``    binary quotient
``neg``  unary negation
``pow``  base expression and a literal integer exponent
``sin cos exp sqrt log``  unary, dispatched through :mod:`.jets`
======== ======================================================

Compiled expressions evaluate on whatever the environment supplies:
plain numbers, exact rationals, or truncated series, so one config
works for point evaluation and for jet transport alike.  Structural
problems (unknown operator, bad arity, non-integer exponent) are
rejected at compile time; an unbound symbol surfaces as a
:class:`~lapasym.errors.DomainError` when the expression is evaluated.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Any, Callable, Mapping

from . import jets
from .errors import DomainError

__all__ = ["compile_expression", "expression_symbols"]

CompiledExpr = Callable[[Mapping[str, Any]], Any]

_SYMBOL = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")

_UNARY_MAPS = {
    "sin": jets.sin,
    "cos": jets.cos,
    "exp": jets.exp,
    "sqrt": jets.sqrt,
    "log": jets.log,
}


def _constant(value: Any) -> CompiledExpr:
    return lambda env: value


def _symbol(name: str) -> CompiledExpr:
    def lookup(env: Mapping[str, Any]) -> Any:
        try:
            return env[name]
        except KeyError:
            raise DomainError(f"unbound symbol {name!r} in expression") from None

    return lookup


def _compile_leaf(node: str) -> CompiledExpr:
    if node == "pi":
        return _constant(math.pi)
    if _SYMBOL.match(node):
        return _symbol(node)
    try:
        value = Fraction(node)
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"unreadable expression leaf {node!r}") from None
    if value.denominator == 1:
        return _constant(value.numerator)
    return _constant(value)


def compile_expression(node: Any) -> CompiledExpr:
    """Compile a prefix-list expression into ``env -> value``."""
    if isinstance(node, bool):
        raise DomainError("booleans are not expression leaves")
    if isinstance(node, (int, float)):
        return _constant(node)
    if isinstance(node, str):
        return _compile_leaf(node)
    if not isinstance(node, (list, tuple)) or not node:
        raise DomainError(f"bad expression node {node!r}")

    op, *raw_args = node
    if op == "pow":
        if len(raw_args) != 2 or isinstance(raw_args[1], bool) \
                or not isinstance(raw_args[1], int):
            raise DomainError("pow takes an expression and a literal integer")
        base = compile_expression(raw_args[0])
        exponent = raw_args[1]
        return lambda env: base(env) ** exponent

    args = [compile_expression(a) for a in raw_args]
    if op == "+":
        if len(args) < 2:
            raise DomainError("+ takes at least two arguments")

        def added(env: Mapping[str, Any]) -> Any:
            total = args[0](env)
            for a in args[1:]:
                total = total + a(env)
            return total

        return added
    if op == "*":
        if len(args) < 2:
            raise DomainError("* takes at least two arguments")

        def multiplied(env: Mapping[str, Any]) -> Any:
            total = args[0](env)
            for a in args[1:]:
                total = total * a(env)
            return total

        return multiplied
    if op == "-":
        if len(args) == 1:
            return lambda env: -args[0](env)
        if len(args) == 2:
            return lambda env: args[0](env) - args[1](env)
        raise DomainError("- takes one or two arguments")
    if op == "/":
        if len(args) != 2:
            raise DomainError("/ takes two arguments")
        return lambda env: args[0](env) / args[1](env)
    if op == "neg":
        if len(args) != 1:
            raise DomainError("neg takes one argument")
        return lambda env: -args[0](env)
    if op in _UNARY_MAPS:
        if len(args) != 1:
            raise DomainError(f"{op} takes one argument")
        fn = _UNARY_MAPS[op]
        return lambda env: fn(args[0](env))
    raise DomainError(f"unknown operator {op!r}")


def expression_symbols(node: Any) -> frozenset[str]:
    """All symbol names an expression will look up."""
    if isinstance(node, str):
        if node == "pi" or not _SYMBOL.match(node):
            return frozenset()
        return frozenset([node])
    if isinstance(node, (list, tuple)) and node:
        args = node[1:-1] if node[0] == "pow" else node[1:]
        names: set[str] = set()
        for child in args:
            names |= expression_symbols(child)
        return frozenset(names)
    return frozenset()
