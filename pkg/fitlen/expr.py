"""Pydantic models for group expressions.

Leaves are cyclic and elementary abelian p-groups; nodes are direct
products, wreath products and iterated wreath powers. The models only
describe a group; ``fitlen.construct`` turns them into permutations.
"""

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator
from sympy import isprime

Action = Literal["natural", "regular"]


class GroupExpr(BaseModel):
    """Base class of the expression tree."""

    model_config = ConfigDict(frozen=True)

    def text(self) -> str:
        raise NotImplementedError

    def order(self, action: Action = "natural") -> int:
        """Order predicted by the product and wreath formulas."""
        raise NotImplementedError

    def degree(self, action: Action = "natural") -> int:
        raise NotImplementedError

    def primes(self) -> frozenset[int]:
        raise NotImplementedError

    def expand(self, action: Action = "natural") -> "GroupExpr":
        """Same group with every iterated power unfolded into wreath products."""
        return self

    def __str__(self) -> str:
        return self.text()


class _PrimeLeaf(GroupExpr):
    p: int
    k: int = Field(ge=1)

    @field_validator("p")
    @classmethod
    def _check_prime(cls, v: int) -> int:
        if not isprime(v):
            raise ValueError(f"{v} is not a prime")
        return v

    def order(self, action: Action = "natural") -> int:
        return self.p**self.k

    def primes(self) -> frozenset[int]:
        return frozenset({self.p})


class Cyclic(_PrimeLeaf):
    """Cyclic group of order p^k, acting regularly on p^k points."""

    def text(self) -> str:
        return f"C({self.p},{self.k})"

    def degree(self, action: Action = "natural") -> int:
        return self.p**self.k


class ElemAbelian(_PrimeLeaf):
    """Elementary abelian group of order p^k: k disjoint p-cycles."""

    def text(self) -> str:
        return f"EA({self.p},{self.k})"

    def degree(self, action: Action = "natural") -> int:
        return self.p * self.k


class Direct(GroupExpr):
    left: GroupExpr
    right: GroupExpr

    def text(self) -> str:
        return f"D({self.left.text()},{self.right.text()})"

    def order(self, action: Action = "natural") -> int:
        return self.left.order(action) * self.right.order(action)

    def degree(self, action: Action = "natural") -> int:
        return self.left.degree(action) + self.right.degree(action)

    def primes(self) -> frozenset[int]:
        return self.left.primes() | self.right.primes()

    def expand(self, action: Action = "natural") -> GroupExpr:
        return Direct(left=self.left.expand(action), right=self.right.expand(action))


class Wreath(GroupExpr):
    """base wr top; ``action`` fixes how top permutes the coordinates."""

    base: GroupExpr
    top: GroupExpr
    action: Action = "natural"

    def text(self) -> str:
        name = "W" if self.action == "natural" else "WR"
        return f"{name}({self.base.text()},{self.top.text()})"

    def coordinates(self, action: Action = "natural") -> int:
        """Number of base copies: the top group's action degree."""
        if self.action == "regular":
            return self.top.order(action)
        return self.top.degree(action)

    def order(self, action: Action = "natural") -> int:
        return self.base.order(action) ** self.coordinates(action) * self.top.order(action)

    def degree(self, action: Action = "natural") -> int:
        return self.base.degree(action) * self.coordinates(action)

    def primes(self) -> frozenset[int]:
        return self.base.primes() | self.top.primes()

    def expand(self, action: Action = "natural") -> GroupExpr:
        return Wreath(base=self.base.expand(action), top=self.top.expand(action), action=self.action)


class Iterated(GroupExpr):
    """[H]_1 = H and [H]_(l+1) = [H]_l wr H.

    With ``action`` unset the wreath steps use the action passed in by the
    caller, normally the configured one.
    """

    expr: GroupExpr
    ell: int = Field(ge=1)
    action: Optional[Action] = None

    def text(self) -> str:
        return f"IT({self.expr.text()},{self.ell})"

    def expand(self, action: Action = "natural") -> GroupExpr:
        step = self.action or action
        inner = self.expr.expand(action)
        result = inner
        for _ in range(self.ell - 1):
            result = Wreath(base=result, top=inner, action=step)
        return result

    def order(self, action: Action = "natural") -> int:
        step = self.action or action
        h_order = self.expr.order(action)
        d = h_order if step == "regular" else self.expr.degree(action)
        order = h_order
        for _ in range(self.ell - 1):
            order = order**d * h_order
        return order

    def degree(self, action: Action = "natural") -> int:
        step = self.action or action
        h_degree = self.expr.degree(action)
        d = self.expr.order(action) if step == "regular" else h_degree
        return h_degree * d ** (self.ell - 1)

    def primes(self) -> frozenset[int]:
        return self.expr.primes()


def prime_factorization_text(n: int, primes: frozenset[int] | set[int]) -> str:
    """Render n as ``2^15*3^5*5`` over the given primes; 1 renders as ``1``."""
    parts = []
    for p in sorted(primes):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            parts.append(f"{p}^{e}" if e > 1 else str(p))
    if n != 1:
        parts.append(str(n))
    return "*".join(parts) if parts else "1"
