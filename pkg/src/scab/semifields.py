"""Coefficient semifields.

Four kinds are supported: the multivariate tropical semifield (Laurent
monomials under componentwise-min addition, with exponent denominators
restricted to 1 or 2), the positive reals under ordinary addition, the
positive reals under the deformed addition  y (+)_k z = (y^k + z^k)^(1/k),
and finite products of these.  The one-element semifield is the tropical
semifield on zero generators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import DimensionError, DomainError
from .poly import LaurentPoly

_ALLOWED_DENOMS = (1, 2)


class TropicalElement:
    """Laurent monomial prod q_i^{e_i} with e_i in (1/2)Z, canonical sparse form."""

    __slots__ = ("ngens", "exps", "_hash")

    def __init__(self, ngens: int, exps: Mapping[int, Fraction]):
        self.ngens = ngens
        clean: dict[int, Fraction] = {}
        for i, e in exps.items():
            e = Fraction(e)
            if e == 0:
                continue
            if not 0 <= i < ngens:
                raise DimensionError(f"generator index {i} out of range for {ngens}")
            if e.denominator not in _ALLOWED_DENOMS:
                raise DomainError(f"exponent {e} has denominator outside {{1,2}}")
            clean[i] = e
        self.exps = clean
        self._hash = None

    @classmethod
    def one(cls, ngens: int) -> "TropicalElement":
        return cls(ngens, {})

    @classmethod
    def generator(cls, ngens: int, i: int, exp=1) -> "TropicalElement":
        return cls(ngens, {i: Fraction(exp)})

    def exponent(self, i: int) -> Fraction:
        return self.exps.get(i, Fraction(0))

    def is_one(self) -> bool:
        return not self.exps

    def _check(self, other: "TropicalElement") -> None:
        if self.ngens != other.ngens:
            raise DimensionError(f"generator sets differ: {self.ngens} vs {other.ngens}")

    def __mul__(self, other: "TropicalElement") -> "TropicalElement":
        self._check(other)
        exps = dict(self.exps)
        for i, e in other.exps.items():
            exps[i] = exps.get(i, Fraction(0)) + e
        return TropicalElement(self.ngens, exps)

    def __truediv__(self, other: "TropicalElement") -> "TropicalElement":
        return self * other.inv()

    def inv(self) -> "TropicalElement":
        return TropicalElement(self.ngens, {i: -e for i, e in self.exps.items()})

    def __pow__(self, k: int) -> "TropicalElement":
        return TropicalElement(self.ngens, {i: e * k for i, e in self.exps.items()})

    def oplus(self, other: "TropicalElement") -> "TropicalElement":
        """Tropical addition: componentwise min over the union of supports."""
        self._check(other)
        exps = {}
        for i in set(self.exps) | set(other.exps):
            exps[i] = min(self.exponent(i), other.exponent(i))
        return TropicalElement(self.ngens, exps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TropicalElement):
            return NotImplemented
        return self.ngens == other.ngens and self.exps == other.exps

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ngens, frozenset(self.exps.items())))
        return self._hash

    def to_laurent(self, nvars: int, nq: int | None = None) -> LaurentPoly:
        """Embed into the coefficient part of a LaurentPoly context."""
        if nq is None:
            nq = self.ngens
        if nq < self.ngens:
            raise DimensionError("coefficient context too small")
        halves = [0] * nq
        for i, e in self.exps.items():
            halves[i] = int(e * 2)
        return LaurentPoly(nvars, nq, {(0,) * nvars + tuple(halves): 1})

    def evaluate(self, qvals) -> float:
        val = 1.0
        for i, e in self.exps.items():
            val *= qvals[i] ** float(e)
        return val

    def to_json(self) -> dict:
        return {"exp": {str(i): f"{e.numerator}/{e.denominator}"
                        for i, e in sorted(self.exps.items())}}

    @classmethod
    def from_json(cls, ngens: int, data: dict) -> "TropicalElement":
        exps = {}
        for key, text in data.get("exp", {}).items():
            if "/" in text:
                num, den = text.split("/")
                exps[int(key)] = Fraction(int(num), int(den))
            else:
                exps[int(key)] = Fraction(int(text))
        return cls(ngens, exps)

    def __str__(self) -> str:
        if not self.exps:
            return "1"
        parts = []
        for i, e in sorted(self.exps.items()):
            if e == 1:
                parts.append(f"q{i + 1}")
            elif e.denominator == 1:
                parts.append(f"q{i + 1}^{e}")
            else:
                parts.append(f"q{i + 1}^({e})")
        return "*".join(parts)

    def __repr__(self) -> str:
        return f"TropicalElement({self})"


def trop_add(a: TropicalElement, b: TropicalElement) -> TropicalElement:
    return a.oplus(b)


def trop_mul(a: TropicalElement, b: TropicalElement) -> TropicalElement:
    return a * b


def deformed_add(k: float, y: float, z: float) -> float:
    """y (+)_k z = (y^k + z^k)^(1/k); approaches min(y, z) as k -> -inf."""
    if k == 0:
        raise DomainError("deformation parameter k must be nonzero")
    if y <= 0 or z <= 0:
        raise DomainError("deformed addition is defined on positive reals only")
    # rescale by min(y,z) so y^k cannot overflow for very negative k
    base = min(y, z)
    ry, rz = y / base, z / base
    return base * math.exp(math.log(ry ** k + rz ** k) / k)


@dataclass(frozen=True)
class SemifieldDescriptor:
    """Interpreter for the four supported semifield kinds.

    kind: "tropical" (generators), "positive-real", "deformed-real" (k),
    or "product" (componentwise on a list of descriptors).  The trivial
    semifield is tropical with zero generators.
    """

    kind: str
    generators: int = 0
    k: float = 1.0
    factors: tuple = field(default_factory=tuple)

    @classmethod
    def tropical(cls, generators: int) -> "SemifieldDescriptor":
        return cls(kind="tropical", generators=generators)

    @classmethod
    def trivial(cls) -> "SemifieldDescriptor":
        return cls.tropical(0)

    @classmethod
    def positive_real(cls) -> "SemifieldDescriptor":
        return cls(kind="positive-real")

    @classmethod
    def deformed_real(cls, k: float) -> "SemifieldDescriptor":
        if k == 0:
            raise DomainError("deformation parameter k must be nonzero")
        return cls(kind="deformed-real", k=k)

    @classmethod
    def product(cls, factors) -> "SemifieldDescriptor":
        return cls(kind="product", factors=tuple(factors))

    def one(self):
        if self.kind == "tropical":
            return TropicalElement.one(self.generators)
        if self.kind == "product":
            return tuple(f.one() for f in self.factors)
        return 1.0

    def mul(self, a, b):
        if self.kind == "product":
            return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))
        if self.kind == "tropical":
            return a * b
        return a * b

    def div(self, a, b):
        if self.kind == "product":
            return tuple(f.div(x, y) for f, x, y in zip(self.factors, a, b))
        return a / b

    def pow(self, a, e: int):
        if self.kind == "product":
            return tuple(f.pow(x, e) for f, x in zip(self.factors, a))
        return a ** e

    def oplus(self, a, b):
        if self.kind == "tropical":
            return a.oplus(b)
        if self.kind == "positive-real":
            if a <= 0 or b <= 0:
                raise DomainError("positive reals only")
            return a + b
        if self.kind == "deformed-real":
            return deformed_add(self.k, a, b)
        return tuple(f.oplus(x, y) for f, x, y in zip(self.factors, a, b))
