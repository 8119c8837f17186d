"""Exact Laurent-polynomial arithmetic for cluster computations.

A :class:`LaurentPoly` is a sparse integer combination of monomials

    x1^a1 ... xn^an * q1^(h1/2) ... qm^(hm/2)

where the cluster exponents ``ai`` are arbitrary integers (Laurent) and the
coefficient-generator exponents are half-integers stored as the integer
numerator ``hi`` of ``hi/2``.  Every value is kept in canonical sparse form
(no zero coefficients), so equality and hashing are structural.

Division is *exact only*: cluster mutation never requires a gcd because new
cluster variables are Laurent in the old ones, and an inexact division is a
loud failure rather than a fallback.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping

from .errors import DimensionError, LaurentDivisionError

Key = tuple  # flat exponent tuple: nvars cluster ints then nq half-unit ints


def _int_gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


class LaurentPoly:
    __slots__ = ("nvars", "nq", "terms", "_hash")

    def __init__(self, nvars: int, nq: int, terms: Mapping[Key, int]):
        self.nvars = nvars
        self.nq = nq
        self.terms = {k: c for k, c in terms.items() if c != 0}
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nvars: int, nq: int) -> "LaurentPoly":
        return cls(nvars, nq, {})

    @classmethod
    def const(cls, nvars: int, nq: int, c: int) -> "LaurentPoly":
        return cls(nvars, nq, {(0,) * (nvars + nq): int(c)})

    @classmethod
    def one(cls, nvars: int, nq: int) -> "LaurentPoly":
        return cls.const(nvars, nq, 1)

    @classmethod
    def variable(cls, nvars: int, nq: int, i: int, power: int = 1) -> "LaurentPoly":
        if not 0 <= i < nvars:
            raise DimensionError(f"variable index {i} out of range for n={nvars}")
        key = [0] * (nvars + nq)
        key[i] = power
        return cls(nvars, nq, {tuple(key): 1})

    @classmethod
    def coeff_gen(cls, nvars: int, nq: int, j: int, halves: int = 2) -> "LaurentPoly":
        """Monomial q_{j+1}^(halves/2)."""
        if not 0 <= j < nq:
            raise DimensionError(f"coefficient index {j} out of range for m={nq}")
        key = [0] * (nvars + nq)
        key[nvars + j] = halves
        return cls(nvars, nq, {tuple(key): 1})

    @classmethod
    def monomial(cls, nvars: int, nq: int, xexp, qhalves=None, coeff: int = 1) -> "LaurentPoly":
        qh = tuple(qhalves) if qhalves is not None else (0,) * nq
        key = tuple(xexp) + qh
        if len(key) != nvars + nq:
            raise DimensionError("exponent tuple has the wrong length")
        return cls(nvars, nq, {key: coeff})

    # -- structure ----------------------------------------------------

    def _check(self, other: "LaurentPoly") -> None:
        if self.nvars != other.nvars or self.nq != other.nq:
            raise DimensionError(
                f"mixed contexts ({self.nvars},{self.nq}) vs ({other.nvars},{other.nq})"
            )

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0,) * (self.nvars + self.nq): 1}

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit_monomial(self) -> bool:
        """Single term with coefficient +-1 (a unit of the Laurent ring over ZP)."""
        return len(self.terms) == 1 and abs(next(iter(self.terms.values()))) == 1

    def leading(self) -> tuple[Key, int]:
        key = max(self.terms)
        return key, self.terms[key]

    def __iter__(self) -> Iterator[tuple[Key, int]]:
        return iter(sorted(self.terms.items(), reverse=True))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.nq == other.nq
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, self.nq, frozenset(self.terms.items())))
        return self._hash

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return LaurentPoly(self.nvars, self.nq, terms)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, self.nq, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        terms: dict[Key, int] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                terms[k] = terms.get(k, 0) + c1 * c2
        return LaurentPoly(self.nvars, self.nq, terms)

    def __pow__(self, e: int) -> "LaurentPoly":
        if e < 0:
            if not self.is_unit_monomial():
                raise LaurentDivisionError("negative power of a non-unit")
            key, c = self.leading()
            inv = {tuple(-a for a in key): c}  # c in {+-1}
            return LaurentPoly(self.nvars, self.nq, inv) ** (-e)
        result = LaurentPoly.one(self.nvars, self.nq)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division in the Laurent ring; raises if the quotient
        does not exist with integer coefficients."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if other.is_monomial():
            dkey, dc = other.leading()
            terms = {}
            for k, c in self.terms.items():
                if c % dc:
                    raise LaurentDivisionError("coefficient not divisible")
                terms[tuple(a - b for a, b in zip(k, dkey))] = c // dc
            return LaurentPoly(self.nvars, self.nq, terms)
        # shift both operands into the polynomial ring, where descending-lex
        # leading terms are well-founded and the division must terminate
        sa = self.min_exponents()
        sb = other.min_exponents()
        rem = {tuple(a - s for a, s in zip(k, sa)): c for k, c in self.terms.items()}
        div = {tuple(a - s for a, s in zip(k, sb)): c for k, c in other.terms.items()}
        dkey = max(div)
        dc = div[dkey]
        offset = tuple(a - b for a, b in zip(sa, sb))
        quo: dict[Key, int] = {}
        while rem:
            rkey = max(rem)
            rc = rem[rkey]
            if any(r < d for r, d in zip(rkey, dkey)):
                raise LaurentDivisionError("leading monomial not divisible")
            if rc % dc:
                raise LaurentDivisionError("leading coefficient not divisible")
            qkey = tuple(a - b for a, b in zip(rkey, dkey))
            qc = rc // dc
            quo[tuple(a + b for a, b in zip(qkey, offset))] = qc
            for k, c in div.items():
                kk = tuple(a + b for a, b in zip(k, qkey))
                nc = rem.get(kk, 0) - qc * c
                if nc:
                    rem[kk] = nc
                else:
                    rem.pop(kk, None)
        return LaurentPoly(self.nvars, self.nq, quo)

    def divides(self, other: "LaurentPoly") -> bool:
        try:
            other.exact_div(self)
            return True
        except (LaurentDivisionError, ZeroDivisionError):
            return False

    # -- evaluation and display ----------------------------------------

    def evaluate(self, xvals, qvals) -> float:
        """Numeric value at positive assignments (q exponents may be half-integral)."""
        total = 0.0
        for key, c in self.terms.items():
            val = float(c)
            for i in range(self.nvars):
                if key[i]:
                    val *= xvals[i] ** key[i]
            for j in range(self.nq):
                h = key[self.nvars + j]
                if h:
                    val *= qvals[j] ** (h / 2.0)
            total += val
        return total

    def min_exponents(self) -> Key:
        if not self.terms:
            return (0,) * (self.nvars + self.nq)
        keys = list(self.terms)
        return tuple(min(k[i] for k in keys) for i in range(self.nvars + self.nq))

    def _monomial_str(self, key: Key) -> str:
        parts = []
        for i in range(self.nvars):
            e = key[i]
            if e == 1:
                parts.append(f"x{i + 1}")
            elif e:
                parts.append(f"x{i + 1}^{e}")
        for j in range(self.nq):
            h = key[self.nvars + j]
            if h == 2:
                parts.append(f"q{j + 1}")
            elif h and h % 2 == 0:
                parts.append(f"q{j + 1}^{h // 2}")
            elif h:
                parts.append(f"q{j + 1}^({h}/2)")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        # factor out negative exponents so the printed form matches the
        # "polynomial / monomial" grammar
        mins = self.min_exponents()
        shift = tuple(-min(e, 0) for e in mins)
        den = self._monomial_str(shift) if any(shift) else ""
        pieces = []
        for key in sorted(self.terms, reverse=True):
            c = self.terms[key]
            mon = self._monomial_str(tuple(a + b for a, b in zip(key, shift)))
            if mon:
                body = mon if abs(c) == 1 else f"{abs(c)}*{mon}"
            else:
                body = str(abs(c))
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f" + {body}" if c > 0 else f" - {body}")
        num = "".join(pieces)
        if not den:
            return num
        if len(self.terms) > 1 or num.startswith("-"):
            num = f"({num})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


class RationalFunction:
    """Quotient of two Laurent polynomials.

    Kept canonical up to monomial content: single-term denominators are
    absorbed into the (Laurent) numerator, an exact division is attempted,
    the denominator's monomial content is stripped, and its leading
    coefficient is made positive.  Equality is decided by cross
    multiplication, which is exact in an integral domain regardless of any
    residual common factor.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = LaurentPoly.one(num.nvars, num.nq)
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = LaurentPoly.one(num.nvars, num.nq)
        else:
            try:
                num = num.exact_div(den)
                den = LaurentPoly.one(num.nvars, num.nq)
            except LaurentDivisionError:
                # cancel the monomial content of the denominator (a unit)
                shift = den.min_exponents()
                if any(shift):
                    mono = LaurentPoly.monomial(num.nvars, num.nq,
                                                shift[: num.nvars], shift[num.nvars:])
                    den = den.exact_div(mono)
                    num = num.exact_div(mono)
                g = 0
                for c in den.terms.values():
                    g = _int_gcd(g, c)
                if g > 1 and all(c % g == 0 for c in num.terms.values()):
                    gmono = LaurentPoly.const(num.nvars, num.nq, g)
                    num = num.exact_div(gmono)
                    den = den.exact_div(gmono)
        if den.leading()[1] < 0:
            num, den = -num, -den
        self.num = num
        self.den = den

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "RationalFunction":
        return cls(p)

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def as_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise LaurentDivisionError(f"{self} is not a Laurent polynomial")
        return self.num

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.den - other.num * self.den,
                                self.den * other.den)

    def __pow__(self, e: int) -> "RationalFunction":
        if e < 0:
            return RationalFunction(self.den, self.num) ** (-e)
        return RationalFunction(self.num ** e, self.den ** e)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None  # equality is extensional; hash only canonical Laurent forms

    def evaluate(self, xvals, qvals) -> float:
        return self.num.evaluate(xvals, qvals) / self.den.evaluate(xvals, qvals)

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        num, den = str(self.num), str(self.den)
        if " " in num and not num.startswith("("):
            num = f"({num})"
        if " " in den or "/" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"RationalFunction({self})"


# ---------------------------------------------------------------------------
# expression parsing (the seed-export grammar: ints, x1..xn, q1..qm, + - * / ^)


class _Parser:
    def __init__(self, text: str, nvars: int, nq: int):
        self.text = text
        self.pos = 0
        self.nvars = nvars
        self.nq = nq

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> RationalFunction:
        value = self._sum()
        self._skip()
        if self.pos != len(self.text):
            raise ValueError(f"trailing input at {self.pos}: {self.text[self.pos:]!r}")
        return value

    def _sum(self) -> RationalFunction:
        value = self._product()
        while self._peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self._product()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _product(self) -> RationalFunction:
        value = self._power()
        while True:
            ch = self._peek()
            if ch == "*":
                self.pos += 1
                value = value * self._power()
            elif ch == "/":
                self.pos += 1
                value = value / self._power()
            else:
                return value

    def _power(self) -> RationalFunction:
        base = self._atom()
        if self._peek() == "^":
            self.pos += 1
            exp = self._exponent()
            if exp.denominator == 2:
                if not (base.is_laurent() and base.num.is_unit_monomial()):
                    raise ValueError("half-integer power of a non-monomial")
                key, c = base.num.leading()
                if any(key[: self.nvars]) or c != 1:
                    raise ValueError("half-integer powers only on coefficient monomials")
                halves = []
                for h in key[self.nvars:]:
                    v = h * exp.numerator
                    if v % 2:
                        raise ValueError("resulting exponent not half-integral")
                    halves.append(v // 2)
                mono = LaurentPoly(self.nvars, self.nq,
                                   {(0,) * self.nvars + tuple(halves): 1})
                return RationalFunction(mono)
            return base ** exp.numerator
        return base

    def _exponent(self) -> Fraction:
        if self._peek() == "(":
            self.pos += 1
            sign = 1
            if self._peek() == "-":
                sign = -1
                self.pos += 1
            a = self._int()
            den = 1
            if self._peek() == "/":
                self.pos += 1
                den = self._int()
            if self._peek() != ")":
                raise ValueError("expected ')' in exponent")
            self.pos += 1
            if den not in (1, 2):
                raise ValueError("exponent denominators restricted to 1 or 2")
            return Fraction(sign * a, den)
        sign = 1
        if self._peek() == "-":
            sign = -1
            self.pos += 1
        return Fraction(sign * self._int())

    def _int(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ValueError(f"expected integer at {start}")
        return int(self.text[start:self.pos])

    def _atom(self) -> RationalFunction:
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            value = self._sum()
            if self._peek() != ")":
                raise ValueError("unbalanced parenthesis")
            self.pos += 1
            return value
        if ch == "-":
            self.pos += 1
            inner = self._atom()
            zero = RationalFunction(LaurentPoly.zero(self.nvars, self.nq))
            return zero - inner
        if ch.isdigit():
            return RationalFunction(LaurentPoly.const(self.nvars, self.nq, self._int()))
        if ch in ("x", "q"):
            self.pos += 1
            idx = self._int() - 1
            if ch == "x":
                return RationalFunction(LaurentPoly.variable(self.nvars, self.nq, idx))
            return RationalFunction(LaurentPoly.coeff_gen(self.nvars, self.nq, idx))
        raise ValueError(f"unexpected character {ch!r} at {self.pos}")


def parse_expression(text: str, nvars: int, nq: int) -> RationalFunction:
    """Parse the seed-export grammar back into a rational function."""
    return _Parser(text, nvars, nq).parse()
