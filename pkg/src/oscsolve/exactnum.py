"""Exact dyadic and rational arithmetic.

Rationals are plain ``fractions.Fraction`` (already canonical: gcd-reduced,
positive denominator).  Dyadics m/2^k get their own lightweight type because
breakpoints of the piecewise-linear maps must stay dyadic and the solver's
deterministic point picking enumerates dyadics by exponent.
"""

from __future__ import annotations

from fractions import Fraction


def is_dyadic(q) -> bool:
    """True iff q = m / 2^k for some integers m, k >= 0."""
    q = Fraction(q)
    d = q.denominator
    return d & (d - 1) == 0


class Dyadic:
    """m / 2^k in canonical form: k = 0 or m odd."""

    __slots__ = ("num", "exp")

    def __init__(self, num: int, exp: int = 0):
        if exp < 0:
            raise ValueError("exponent must be non-negative")
        while exp > 0 and num % 2 == 0:
            num //= 2
            exp -= 1
        self.num = num
        self.exp = exp

    @classmethod
    def from_fraction(cls, q) -> "Dyadic":
        q = Fraction(q)
        if not is_dyadic(q):
            raise ValueError(f"{q} is not dyadic")
        return cls(q.numerator, q.denominator.bit_length() - 1)

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return self.num == other.num and self.exp == other.exp
        return self.as_fraction() == other

    def __hash__(self):
        return hash(self.as_fraction())

    def __lt__(self, other):
        other = other.as_fraction() if isinstance(other, Dyadic) else other
        return self.as_fraction() < other

    def __le__(self, other):
        other = other.as_fraction() if isinstance(other, Dyadic) else other
        return self.as_fraction() <= other

    def __repr__(self):
        if self.exp == 0:
            return f"Dyadic({self.num})"
        return f"Dyadic({self.num}/2^{self.exp})"

    def __str__(self):
        if self.exp == 0:
            return str(self.num)
        return f"{self.num}/{1 << self.exp}"


def to_dyadic(q) -> Dyadic:
    """Exact conversion; raises ValueError on non-dyadic input."""
    return Dyadic.from_fraction(q)


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or a bare integer."""
    text = text.strip()
    if "/" in text:
        p, q = text.split("/", 1)
        return Fraction(int(p), int(q))
    return Fraction(int(text))


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def dyadic_in_interval(a, b, avoid=()) -> Fraction:
    """The dyadic m/2^k strictly inside (a, b), off ``avoid``, with smallest
    exponent k; ties broken by smallest m >= 0, then smallest |m|.

    Always succeeds: dyadics are dense and ``avoid`` is finite.
    """
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError(f"empty interval ({a}, {b})")
    avoid = {Fraction(x) for x in avoid}
    k = 0
    while True:
        scale = 1 << k
        lo, hi = a * scale, b * scale
        # strict integers m with lo < m < hi
        m_min = -((-lo.numerator) // lo.denominator)  # ceil(lo)
        if Fraction(m_min) == lo:
            m_min += 1
        m_max = hi.numerator // hi.denominator  # floor(hi)
        if Fraction(m_max) == hi:
            m_max -= 1
        candidates = [m for m in range(m_min, m_max + 1)
                      if Fraction(m, scale) not in avoid]
        if candidates:
            nonneg = [m for m in candidates if m >= 0]
            m = min(nonneg) if nonneg else max(candidates)
            return Fraction(m, scale)
        k += 1
