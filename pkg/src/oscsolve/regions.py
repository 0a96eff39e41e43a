"""Exact open-set algebra for the two acting spaces.

IntervalRegion: finite unions of disjoint open subintervals of (0, 1) with
rational endpoints.  Intervals sharing an endpoint are kept separate -- the
shared point is a genuine puncture, e.g. (0,1) minus {1/2} is represented as
(0,1/2) u (1/2,1) and must round-trip exactly.

DiscreteRegion: finite or cofinite subsets of the naturals.
"""

from __future__ import annotations

from fractions import Fraction

from .exactnum import dyadic_in_interval, format_rational, parse_rational


class IntervalRegion:
    """Canonical finite union of disjoint open intervals inside (0, 1)."""

    __slots__ = ("intervals",)

    def __init__(self, intervals=()):
        ivs = sorted((Fraction(a), Fraction(b)) for a, b in intervals if a < b)
        merged = []
        for a, b in ivs:
            if merged and a < merged[-1][1]:  # strict overlap only
                merged[-1] = (merged[-1][0], max(merged[-1][1], b))
            else:
                merged.append((a, b))
        self.intervals = tuple(merged)

    @classmethod
    def empty(cls):
        return cls()

    @classmethod
    def interval(cls, a, b):
        return cls([(a, b)])

    # -- queries ---------------------------------------------------------

    def is_empty(self) -> bool:
        return not self.intervals

    def is_infinite(self) -> bool:
        return bool(self.intervals)

    def contains(self, p) -> bool:
        p = Fraction(p)
        return any(a < p < b for a, b in self.intervals)

    def is_subset(self, other: "IntervalRegion") -> bool:
        # a connected open interval lies in at most one component of other
        for a, b in self.intervals:
            if not any(c <= a and b <= d for c, d in other.intervals):
                return False
        return True

    # -- boolean algebra --------------------------------------------------

    def union(self, other: "IntervalRegion") -> "IntervalRegion":
        return IntervalRegion(self.intervals + other.intervals)

    def intersect(self, other: "IntervalRegion") -> "IntervalRegion":
        out = []
        for a, b in self.intervals:
            for c, d in other.intervals:
                lo, hi = max(a, c), min(b, d)
                if lo < hi:
                    out.append((lo, hi))
        return IntervalRegion(out)

    def closure_pieces(self):
        """Closed intervals [a, b] covering the closure (punctures healed)."""
        out = []
        for a, b in self.intervals:
            if out and a <= out[-1][1]:
                out[-1] = (out[-1][0], max(out[-1][1], b))
            else:
                out.append((a, b))
        return out

    def minus_closure(self, other: "IntervalRegion") -> "IntervalRegion":
        """self minus the closure of other; equals int(self \\ other)."""
        pieces = self.intervals
        for c, d in other.closure_pieces():
            nxt = []
            for a, b in pieces:
                if max(a, c) <= min(b, d):  # touching or overlapping
                    if a < c:
                        nxt.append((a, min(b, c)))
                    if d < b:
                        nxt.append((max(a, d), b))
                else:
                    nxt.append((a, b))
            pieces = nxt
        return IntervalRegion(pieces)

    def difference(self, other: "IntervalRegion") -> "IntervalRegion":
        """Open difference int(self \\ other)."""
        return self.minus_closure(other)

    def boundary_points(self):
        """closure(self) minus self: the finite set of uncovered endpoints."""
        pts = set()
        for a, b in self.intervals:
            for p in (a, b):
                if not self.contains(p):
                    pts.add(p)
        return sorted(pts)

    def regularize(self) -> "IntervalRegion":
        """int(closure(self)): heal isolated punctures, keep real gaps."""
        return IntervalRegion(self.closure_pieces())

    def remove_point(self, p) -> "IntervalRegion":
        """Puncture the region at p (split the interval containing it)."""
        p = Fraction(p)
        out = []
        for a, b in self.intervals:
            if a < p < b:
                out.append((a, p))
                out.append((p, b))
            else:
                out.append((a, b))
        return IntervalRegion(out)

    def component_containing(self, p) -> "IntervalRegion":
        p = Fraction(p)
        for a, b in self.intervals:
            if a < p < b:
                return IntervalRegion([(a, b)])
        raise ValueError(f"{p} not in region {self}")

    def pick_point(self, avoid=()) -> Fraction:
        """Deterministic dyadic point inside the region, off ``avoid``."""
        if self.is_empty():
            raise ValueError("cannot pick a point in the empty region")
        avoid = set(Fraction(x) for x in avoid)
        for a, b in self.intervals:
            return dyadic_in_interval(a, b, avoid)

    # -- plumbing ----------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, IntervalRegion) and self.intervals == other.intervals

    def __hash__(self):
        return hash(self.intervals)

    def __repr__(self):
        return f"IntervalRegion({self})"

    def __str__(self):
        if not self.intervals:
            return "{}"
        return "u".join(f"({format_rational(a)},{format_rational(b)})"
                        for a, b in self.intervals)


class DiscreteRegion:
    """Finite or cofinite subset of the naturals."""

    __slots__ = ("cofinite", "elements")

    def __init__(self, elements=(), cofinite: bool = False):
        els = frozenset(int(x) for x in elements)
        if any(x < 0 for x in els):
            raise ValueError("elements must be non-negative")
        self.cofinite = bool(cofinite)
        self.elements = els

    @classmethod
    def empty(cls):
        return cls()

    @classmethod
    def full(cls):
        return cls((), cofinite=True)

    @classmethod
    def finite(cls, elements):
        return cls(elements, cofinite=False)

    def is_empty(self) -> bool:
        return not self.cofinite and not self.elements

    def is_infinite(self) -> bool:
        return self.cofinite

    def contains(self, p) -> bool:
        return (p not in self.elements) if self.cofinite else (p in self.elements)

    def complement(self) -> "DiscreteRegion":
        return DiscreteRegion(self.elements, not self.cofinite)

    def union(self, other: "DiscreteRegion") -> "DiscreteRegion":
        if not self.cofinite and not other.cofinite:
            return DiscreteRegion(self.elements | other.elements)
        if self.cofinite and other.cofinite:
            return DiscreteRegion(self.elements & other.elements, True)
        fin, cof = (self, other) if not self.cofinite else (other, self)
        return DiscreteRegion(cof.elements - fin.elements, True)

    def intersect(self, other: "DiscreteRegion") -> "DiscreteRegion":
        return self.complement().union(other.complement()).complement()

    def difference(self, other: "DiscreteRegion") -> "DiscreteRegion":
        return self.intersect(other.complement())

    def minus_closure(self, other):
        return self.difference(other)

    def is_subset(self, other: "DiscreteRegion") -> bool:
        return self.difference(other).is_empty()

    def boundary_points(self):
        return []

    def regularize(self):
        return self

    def component_containing(self, p) -> "DiscreteRegion":
        if not self.contains(p):
            raise ValueError(f"{p} not in region {self}")
        return self

    def pick_point(self, avoid=()) -> int:
        avoid = set(avoid)
        if self.cofinite:
            n = 0
            while n in self.elements or n in avoid:
                n += 1
            return n
        for n in sorted(self.elements):
            if n not in avoid:
                return n
        raise ValueError("no point available")

    def sorted_elements(self):
        if self.cofinite:
            raise ValueError("cofinite region has infinitely many elements")
        return sorted(self.elements)

    def __eq__(self, other):
        return (isinstance(other, DiscreteRegion)
                and self.cofinite == other.cofinite
                and self.elements == other.elements)

    def __hash__(self):
        return hash((self.cofinite, self.elements))

    def __repr__(self):
        return f"DiscreteRegion({self})"

    def __str__(self):
        body = ",".join(str(x) for x in sorted(self.elements))
        return ("cofinite{%s}" if self.cofinite else "finite{%s}") % body


class Space:
    """The two acting spaces, each with its ambient region and the finite
    fixed-point set of the acting group.

    Interval: the group of PL maps acts on (0, 1); the endpoints 0 and 1
    are fixed by every element and the ambient region already excludes
    them.  Discrete: finitary permutations act on the naturals with no
    global fixed points.
    """

    __slots__ = ("name",)

    def __init__(self, name: str):
        if name not in ("interval", "discrete"):
            raise ValueError(f"unknown space {name!r}")
        self.name = name

    @property
    def is_interval(self) -> bool:
        return self.name == "interval"

    def ambient(self):
        if self.is_interval:
            return IntervalRegion.interval(0, 1)
        return DiscreteRegion.full()

    def empty(self):
        if self.is_interval:
            return IntervalRegion.empty()
        return DiscreteRegion.empty()

    def interior_complement(self, a, within=None):
        """within ∩ int(X \\ (a ∪ Fix(G))); plain complement when discrete."""
        if within is None:
            within = self.ambient()
        if self.is_interval:
            return within.minus_closure(a)
        return within.difference(a)

    def support_of(self, elem):
        return elem.support()

    def __eq__(self, other):
        return isinstance(other, Space) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"Space({self.name})"


INTERVAL = Space("interval")
DISCRETE = Space("discrete")


def parse_region(text: str):
    """Parse "(5/8,1)", "(0,1/4)u(1/2,3/4)", "finite{1,2}", "cofinite{}"."""
    text = text.strip().replace(" ", "")
    if text.startswith("finite{") or text.startswith("cofinite{"):
        cof = text.startswith("cofinite")
        body = text[text.index("{") + 1:-1]
        if not text.endswith("}"):
            raise ValueError(f"bad region syntax: {text!r}")
        els = [int(x) for x in body.split(",") if x]
        return DiscreteRegion(els, cofinite=cof)
    if text == "{}":
        return IntervalRegion.empty()
    ivs = []
    for part in text.split("u"):
        if not (part.startswith("(") and part.endswith(")")) or "," not in part:
            raise ValueError(f"bad region syntax: {text!r}")
        a, b = part[1:-1].split(",")
        ivs.append((parse_rational(a), parse_rational(b)))
    return IntervalRegion(ivs)
