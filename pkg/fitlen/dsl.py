"""Parser for the group expression language.

    expr := "C(" int "," int ")" | "EA(" int "," int ")"
          | "D(" expr "," expr ")" | "W(" expr "," expr ")"
          | "WR(" expr "," expr ")" | "IT(" expr "," int ")"

``W`` is the natural wreath product, ``WR`` the regular one. Whitespace is
allowed between tokens.
"""

import re

from pydantic import ValidationError

from .errors import ExpressionSyntaxError, UsageError
from .expr import Cyclic, Direct, ElemAbelian, GroupExpr, Iterated, Wreath

_NAME_RE = re.compile(r"[A-Za-z]+")
_INT_RE = re.compile(r"-?\d+")

_BINARY = {"D", "W", "WR"}
_LEAVES = {"C", "EA"}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str) -> ExpressionSyntaxError:
        return ExpressionSyntaxError(message, self.text, self.pos)

    def skip_space(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, char: str) -> None:
        self.skip_space()
        if self.pos >= len(self.text) or self.text[self.pos] != char:
            found = self.text[self.pos] if self.pos < len(self.text) else "end of input"
            raise self.fail(f"expected {char!r}, found {found!r}")
        self.pos += 1

    def integer(self) -> int:
        self.skip_space()
        match = _INT_RE.match(self.text, self.pos)
        if match is None:
            raise self.fail("expected an integer")
        self.pos = match.end()
        return int(match.group())

    def expression(self) -> GroupExpr:
        self.skip_space()
        start = self.pos
        match = _NAME_RE.match(self.text, self.pos)
        if match is None:
            raise self.fail("expected C, EA, D, W, WR or IT")
        name = match.group().upper()
        if name not in _BINARY | _LEAVES | {"IT"}:
            raise self.fail(f"unknown constructor {match.group()!r}")
        self.pos = match.end()
        self.expect("(")
        try:
            if name in _LEAVES:
                p = self.integer()
                self.expect(",")
                k = self.integer()
                self.expect(")")
                return Cyclic(p=p, k=k) if name == "C" else ElemAbelian(p=p, k=k)
            first = self.expression()
            self.expect(",")
            if name == "IT":
                ell = self.integer()
                self.expect(")")
                return Iterated(expr=first, ell=ell)
            second = self.expression()
            self.expect(")")
        except ValidationError as e:
            details = "; ".join(
                f"{'.'.join(str(x) for x in err['loc']) or 'value'}: {err['msg']}"
                for err in e.errors()
            )
            if name == "IT":
                details = details.replace("ell:", "iteration count:")
            raise UsageError(f"invalid {name}(...) at position {start}: {details}")
        if name == "D":
            return Direct(left=first, right=second)
        return Wreath(base=first, top=second, action="natural" if name == "W" else "regular")


def parse_expression(text: str) -> GroupExpr:
    """Parse expression text such as ``W(C(2,1),W(C(3,1),C(5,1)))``.

    Raises:
        ExpressionSyntaxError: On malformed text, with the failing position
        UsageError: On a well-formed expression with invalid values
            (a non-prime, k < 1 or an iteration count below 1)
    """
    parser = _Parser(text)
    expr = parser.expression()
    parser.skip_space()
    if parser.pos != len(text):
        raise parser.fail("unexpected trailing text")
    return expr
