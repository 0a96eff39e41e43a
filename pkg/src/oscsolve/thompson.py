"""Thompson's group F as canonical piecewise-linear maps of [0, 1].

An element is stored by its breakpoints (t, f(t)): dyadic, strictly
increasing in both coordinates, with every slope an integer power of 2.
Collinear interior breakpoints are removed, so equality of canonical
breakpoint tuples is equality in F.
"""

from __future__ import annotations

from fractions import Fraction

from .exactnum import dyadic_in_interval, format_rational, is_dyadic
from .regions import IntervalRegion

ZERO = Fraction(0)
ONE = Fraction(1)


def _is_pow2(q: Fraction) -> bool:
    n, d = q.numerator, q.denominator
    return n > 0 and n & (n - 1) == 0 and d & (d - 1) == 0


class PLMap:
    """Piecewise-linear dyadic homeomorphism of [0, 1] (element of F)."""

    __slots__ = ("breakpoints",)

    def __init__(self, breakpoints):
        pts = sorted({(Fraction(t), Fraction(v)) for t, v in breakpoints})
        if not pts or pts[0] != (ZERO, ZERO) or pts[-1] != (ONE, ONE):
            raise ValueError("map must fix 0 and 1")
        for (t0, v0), (t1, v1) in zip(pts, pts[1:]):
            if t0 >= t1 or v0 >= v1:
                raise ValueError("breakpoints must be strictly increasing")
            if not _is_pow2((v1 - v0) / (t1 - t0)):
                raise ValueError("slopes must be powers of 2")
        for t, v in pts:
            if not (is_dyadic(t) and is_dyadic(v)):
                raise ValueError("breakpoints must be dyadic")
        # drop collinear interior points
        keep = [pts[0]]
        for i in range(1, len(pts) - 1):
            (t0, v0), (t1, v1), (t2, v2) = keep[-1], pts[i], pts[i + 1]
            if (v1 - v0) * (t2 - t1) != (v2 - v1) * (t1 - t0):
                keep.append(pts[i])
        keep.append(pts[-1])
        self.breakpoints = tuple(keep)

    @classmethod
    def identity(cls) -> "PLMap":
        return cls([(0, 0), (1, 1)])

    def is_identity(self) -> bool:
        return self.breakpoints == ((ZERO, ZERO), (ONE, ONE))

    def __call__(self, p):
        return self.evaluate(p)

    def evaluate(self, p) -> Fraction:
        p = Fraction(p)
        if not ZERO <= p <= ONE:
            raise ValueError(f"{p} outside [0, 1]")
        pts = self.breakpoints
        lo, hi = 0, len(pts) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if pts[mid][0] <= p:
                lo = mid
            else:
                hi = mid
        (t0, v0), (t1, v1) = pts[lo], pts[hi]
        return v0 + (v1 - v0) * (p - t0) / (t1 - t0)

    def inverse(self) -> "PLMap":
        return PLMap([(v, t) for t, v in self.breakpoints])

    def compose(self, other: "PLMap") -> "PLMap":
        """self after other: (self.compose(other))(x) = self(other(x))."""
        oinv = other.inverse()
        xs = {t for t, _ in other.breakpoints}
        xs.update(oinv.evaluate(t) for t, _ in self.breakpoints)
        return PLMap([(x, self.evaluate(other.evaluate(x))) for x in xs])

    def __mul__(self, other: "PLMap") -> "PLMap":
        return self.compose(other)

    def __pow__(self, n: int) -> "PLMap":
        if n < 0:
            return self.inverse() ** (-n)
        out = PLMap.identity()
        base = self
        while n:
            if n & 1:
                out = out.compose(base)
            base = base.compose(base)
            n >>= 1
        return out

    def support(self) -> IntervalRegion:
        """Open set of moved points, as a subset of the ambient (0, 1).

        Non-dyadic fixed points of individual pieces puncture the region.
        """
        region = IntervalRegion.interval(0, 1)
        punctures = []
        pts = self.breakpoints
        for (t0, v0), (t1, v1) in zip(pts, pts[1:]):
            s = (v1 - v0) / (t1 - t0)
            c = v0 - s * t0
            if s == 1 and c == 0:
                region = region.minus_closure(IntervalRegion.interval(t0, t1))
            elif s != 1:
                p = c / (1 - s)  # unique crossing of f(x) = x on this piece
                if t0 < p < t1:
                    punctures.append(p)
        for t, v in pts[1:-1]:
            if t == v:
                punctures.append(t)
        for p in punctures:
            region = region.remove_point(p)
        return region

    def apply_region(self, r: IntervalRegion) -> IntervalRegion:
        return IntervalRegion([(self.evaluate(a), self.evaluate(b))
                               for a, b in r.intervals])

    def apply_point(self, p):
        return self.evaluate(p)

    def displacement(self) -> Fraction:
        """max |f(x) - x|; f - id is piecewise linear, so it is attained
        at a breakpoint."""
        return max(abs(v - t) for t, v in self.breakpoints)

    def __eq__(self, other):
        return isinstance(other, PLMap) and self.breakpoints == other.breakpoints

    def __hash__(self):
        return hash(self.breakpoints)

    def __repr__(self):
        body = "".join(f"({format_rational(t)},{format_rational(v)})"
                       for t, v in self.breakpoints)
        return f"pl{{{body}}}"


def generator(n: int) -> PLMap:
    """The standard generator x_n: identity on [0, (2^n-1)/2^n], then
    slope 1/2, slope 1, slope 2."""
    if n < 0:
        raise ValueError("generator index must be non-negative")
    a = Fraction((1 << n) - 1, 1 << n)
    b = Fraction((1 << (n + 1)) - 1, 1 << (n + 1))
    c = Fraction((1 << (n + 2)) - 1, 1 << (n + 2))
    fb = b / 2 + a / 2  # slope 1/2 from (a, a)
    fc = fb + (c - b)   # slope 1
    return PLMap([(0, 0), (a, a), (b, fb), (c, fc), (1, 1)])


def rescale(f: PLMap, a, b) -> PLMap:
    """The rescaling isomorphism onto F_{[a,b]}: conjugate f by the affine
    map [0,1] -> [a,b], identity outside [a,b]."""
    a, b = Fraction(a), Fraction(b)
    if not (ZERO <= a < b <= ONE and is_dyadic(a) and is_dyadic(b)):
        raise ValueError(f"[{a}, {b}] must be a dyadic subinterval of [0, 1]")
    w = b - a
    pts = [(0, 0), (a, a), (b, b), (1, 1)]
    pts.extend((a + w * t, a + w * v) for t, v in f.breakpoints)
    return PLMap(pts)


def rel_generator(a, b, n: int) -> PLMap:
    """x_{[a,b],n}: the generator x_n transported to [a, b]."""
    return rescale(generator(n), a, b)


def _standard_partition(c: Fraction, d: Fraction):
    """Greedy split of the dyadic interval [c, d] into standard dyadic
    intervals [k/2^m, (k+1)/2^m], largest first from the left."""
    out = []
    while c < d:
        h = Fraction(1)
        while c % h != 0 or c + h > d:
            h /= 2
        out.append((c, c + h))
        c = c + h
    return out


def _equalize(parts_a, parts_b):
    # split the widest (leftmost tie) standard interval of the shorter list
    while len(parts_a) != len(parts_b):
        parts = parts_a if len(parts_a) < len(parts_b) else parts_b
        i = max(range(len(parts)), key=lambda j: (parts[j][1] - parts[j][0], -j))
        c, d = parts[i]
        m = (c + d) / 2
        parts[i:i + 1] = [(c, m), (m, d)]
    return parts_a, parts_b


def cfp_interpolate(xs, ys, rigid=None) -> PLMap:
    """An element of F mapping the dyadic partition xs pointwise onto ys.

    With ``rigid`` = i (1-based panel index), the output is the identity on
    [xs[i-1], xs[i]]; that panel must coincide in both partitions.
    """
    xs = [Fraction(x) for x in xs]
    ys = [Fraction(y) for y in ys]
    if len(xs) != len(ys) or len(xs) < 2:
        raise ValueError("partitions must have equal length >= 2")
    if xs[0] != 0 or xs[-1] != 1 or ys[0] != 0 or ys[-1] != 1:
        raise ValueError("partitions must run from 0 to 1")
    for seq in (xs, ys):
        for p, q in zip(seq, seq[1:]):
            if not p < q:
                raise ValueError("partitions must be strictly increasing")
            if not (is_dyadic(p) and is_dyadic(q)):
                raise ValueError("partitions must be dyadic")
    if rigid is not None:
        if not 1 <= rigid <= len(xs) - 1:
            raise ValueError("rigid panel index out of range")
        if xs[rigid - 1] != ys[rigid - 1] or xs[rigid] != ys[rigid]:
            raise ValueError("rigid panel must coincide in both partitions")
    pts = [(Fraction(0), Fraction(0))]
    for j in range(len(xs) - 1):
        if rigid is not None and j == rigid - 1:
            pts.append((xs[j + 1], ys[j + 1]))
            continue
        pa, pb = _equalize(_standard_partition(xs[j], xs[j + 1]),
                           _standard_partition(ys[j], ys[j + 1]))
        # i-th standard piece maps to i-th linearly: slope a power of 2
        for (c0, c1), (d0, d1) in zip(pa, pb):
            pts.append((c1, d1))
    return PLMap(pts)


def make_mover(window, p, forbid=()) -> PLMap:
    """An element of F supported inside the open interval ``window`` that
    moves p off ``forbid`` and off itself.

    Builds x_{[a',b'],0}^m on the largest deterministic dyadic subinterval
    around p and takes the smallest power m that escapes forbid.  The orbit
    of p is infinite, so at most |forbid| + 1 powers are tested.
    """
    a, b = Fraction(window[0]), Fraction(window[1])
    p = Fraction(p)
    if not a < p < b:
        raise ValueError(f"{p} not inside ({a}, {b})")
    aa = a if is_dyadic(a) and a >= 0 else dyadic_in_interval(a, p)
    bb = b if is_dyadic(b) and b <= 1 else dyadic_in_interval(p, b)
    if not aa < p:
        aa = dyadic_in_interval(a, p)
    if not p < bb:
        bb = dyadic_in_interval(p, b)
    base = rel_generator(aa, bb, 0)
    forbid = {Fraction(x) for x in forbid}
    f = base
    while f.evaluate(p) == p or f.evaluate(p) in forbid:
        f = f.compose(base)
    return f
