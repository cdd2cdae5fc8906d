"""Exact rationals and elements a + b*w of Q(sqrt(-d)) or of a formal module Q + Q*t.

Rationals are :class:`fractions.Fraction`, which already keeps the reduced
form with a positive denominator.  Elements of an imaginary quadratic field
use the basis {1, w} with w = sqrt(-d), so multiplication is governed by
the single rule w^2 = -d.  The formal ambient models a curve without
complex multiplication: t is transcendental, so only rational scalars act.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC

from .errors import (
    AmbientMismatch,
    DivisionByZero,
    FormalConjugationUndefined,
    FormalInverseUndefined,
    FormalNormUndefined,
    FormalProductUndefined,
)

Rational = Fraction


def to_rational(x) -> Fraction:
    """Coerce an int, Fraction or string like ``"-3/4"`` to a Fraction.

    Floats are refused: a binary float is never what the caller meant.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational string: {text!r}") from None
    if d == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(n, d)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class Quadratic:
    """The field Q(sqrt(-d)), d squarefree and positive."""

    d: int

    def __post_init__(self):
        if isinstance(self.d, bool) or not isinstance(self.d, int):
            raise TypeError("d must be an int")
        if not is_squarefree(self.d):
            raise ValueError(f"d = {self.d} is not a squarefree positive integer")

    def __str__(self):
        return f"Q(sqrt(-{self.d}))"

    def to_json(self):
        return {"kind": "quadratic", "d": self.d}


@dataclass(frozen=True)
class Formal:
    """A formal module Q + Q*t for a transcendental period t named ``id``."""

    id: str

    def __post_init__(self):
        if not isinstance(self.id, str) or not self.id:
            raise ValueError("formal ambient id must be a non-empty string")

    def __str__(self):
        return f"formal[{self.id}]"

    def to_json(self):
        return {"kind": "formal", "id": self.id}


AmbientTag = Quadratic | Formal


def ambient_from_json(obj) -> AmbientTag:
    if not isinstance(obj, dict):
        raise ValueError("ambient must be an object")
    kind = obj.get("kind")
    if kind == "quadratic":
        if set(obj) != {"kind", "d"}:
            raise ValueError(f"quadratic ambient takes exactly 'kind' and 'd', got {sorted(obj)}")
        return Quadratic(obj["d"])
    if kind == "formal":
        if set(obj) != {"kind", "id"}:
            raise ValueError(f"formal ambient takes exactly 'kind' and 'id', got {sorted(obj)}")
        return Formal(obj["id"])
    raise ValueError(f"unknown ambient kind {kind!r}")


@dataclass(frozen=True)
class QuadElement:
    """a + b*w with rational a, b; w = sqrt(-d) or the formal period t."""

    a: Fraction
    b: Fraction
    ambient: AmbientTag

    def __post_init__(self):
        object.__setattr__(self, "a", to_rational(self.a))
        object.__setattr__(self, "b", to_rational(self.b))

    # construction helpers

    @classmethod
    def rational(cls, q, ambient: AmbientTag) -> QuadElement:
        return cls(to_rational(q), Fraction(0), ambient)

    @classmethod
    def gen(cls, ambient: AmbientTag) -> QuadElement:
        """The generator w (or t)."""
        return cls(Fraction(0), Fraction(1), ambient)

    def _coerce(self, other) -> QuadElement | None:
        if isinstance(other, QuadElement):
            if other.ambient != self.ambient:
                raise AmbientMismatch(f"{self.ambient} vs {other.ambient}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadElement(Fraction(other), Fraction(0), self.ambient)
        return None

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, QuadElement):
            return (self.a, self.b, self.ambient) == (other.a, other.b, other.ambient)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        # rational elements hash like the rational they equal
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.ambient))

    # ring operations

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self.a + o.a, self.b + o.b, self.ambient)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(-self.a, -self.b, self.ambient)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self.a - o.a, self.b - o.b, self.ambient)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return quad_mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return quad_mul(self, quad_inv(o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return quad_mul(o, quad_inv(self))

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return quad_inv(self) ** (-n)
        result = QuadElement(Fraction(1), Fraction(0), self.ambient)
        for _ in range(n):
            result = quad_mul(result, self)
        return result

    def conj(self) -> QuadElement:
        return quad_conj(self)

    def norm(self) -> Fraction:
        return quad_norm(self)

    def inv(self) -> QuadElement:
        return quad_inv(self)

    def to_json(self):
        return [format_rational(self.a), format_rational(self.b)]

    def __str__(self):
        sym = "w" if isinstance(self.ambient, Quadratic) else "t"
        if self.b == 0:
            return format_rational(self.a)
        coef = abs(self.b)
        term = sym if coef == 1 else f"{format_rational(coef)}*{sym}"
        if self.a == 0:
            return term if self.b > 0 else f"-{term}"
        sign = "-" if self.b < 0 else "+"
        return f"{format_rational(self.a)} {sign} {term}"


def quad_mul(x: QuadElement, y: QuadElement) -> QuadElement:
    if x.ambient != y.ambient:
        raise AmbientMismatch(f"{x.ambient} vs {y.ambient}")
    amb = x.ambient
    if isinstance(amb, Formal):
        if x.b != 0 and y.b != 0:
            raise FormalProductUndefined("t*t is undefined in a formal ambient")
        return QuadElement(x.a * y.a, x.a * y.b + x.b * y.a, amb)
    return QuadElement(x.a * y.a - amb.d * x.b * y.b, x.a * y.b + x.b * y.a, amb)


def quad_conj(x: QuadElement) -> QuadElement:
    if isinstance(x.ambient, Formal):
        raise FormalConjugationUndefined("conjugation needs a quadratic ambient")
    return QuadElement(x.a, -x.b, x.ambient)


def quad_norm(x: QuadElement) -> Fraction:
    if isinstance(x.ambient, Formal):
        raise FormalNormUndefined("norm needs a quadratic ambient")
    return x.a * x.a + x.ambient.d * x.b * x.b


def quad_inv(x: QuadElement) -> QuadElement:
    if x.is_zero():
        raise DivisionByZero("inverse of zero")
    if isinstance(x.ambient, Formal):
        if x.b != 0:
            raise FormalInverseUndefined("only rationals are invertible in a formal ambient")
        return QuadElement(1 / x.a, Fraction(0), x.ambient)
    n = quad_norm(x)
    return QuadElement(x.a / n, -x.b / n, x.ambient)
