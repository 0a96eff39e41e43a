"""Finitary permutations of the naturals (elements of S_fin and Alt)."""

from __future__ import annotations

from .regions import DiscreteRegion


class FinPerm:
    """Permutation of the naturals moving only finitely many points."""

    __slots__ = ("mapping",)

    def __init__(self, mapping=None):
        mapping = dict(mapping or {})
        clean = {int(k): int(v) for k, v in mapping.items() if k != v}
        if any(k < 0 or v < 0 for k, v in clean.items()):
            raise ValueError("points must be non-negative")
        if set(clean) != set(clean.values()):
            raise ValueError("mapping is not a permutation")
        self.mapping = clean

    @classmethod
    def identity(cls) -> "FinPerm":
        return cls()

    @classmethod
    def from_cycles(cls, cycles) -> "FinPerm":
        mapping = {}
        for cyc in cycles:
            cyc = [int(x) for x in cyc]
            if len(set(cyc)) != len(cyc):
                raise ValueError(f"repeated point in cycle {cyc}")
            for x in cyc:
                if x in mapping:
                    raise ValueError(f"point {x} in two cycles")
            for x, y in zip(cyc, cyc[1:] + cyc[:1]):
                mapping[x] = y
        return cls(mapping)

    def is_identity(self) -> bool:
        return not self.mapping

    def apply(self, p: int) -> int:
        return self.mapping.get(p, p)

    def __call__(self, p: int) -> int:
        return self.mapping.get(p, p)

    def apply_point(self, p: int) -> int:
        return self.mapping.get(p, p)

    def inverse(self) -> "FinPerm":
        return FinPerm({v: k for k, v in self.mapping.items()})

    def compose(self, other: "FinPerm") -> "FinPerm":
        """self after other."""
        pts = set(self.mapping) | set(other.mapping)
        return FinPerm({p: self.apply(other.apply(p)) for p in pts})

    def __mul__(self, other: "FinPerm") -> "FinPerm":
        return self.compose(other)

    def __pow__(self, n: int) -> "FinPerm":
        if n < 0:
            return self.inverse() ** (-n)
        out = FinPerm.identity()
        base = self
        while n:
            if n & 1:
                out = out.compose(base)
            base = base.compose(base)
            n >>= 1
        return out

    def cycles(self):
        """Cycle decomposition, each cycle rotated to start at its minimum,
        cycles sorted by minimum."""
        seen = set()
        out = []
        for start in sorted(self.mapping):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self.mapping[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.mapping[x]
            out.append(tuple(cyc))
        return out

    def sign(self) -> int:
        s = 1
        for cyc in self.cycles():
            if len(cyc) % 2 == 0:
                s = -s
        return s

    def support(self) -> DiscreteRegion:
        return DiscreteRegion(self.mapping.keys())

    def apply_region(self, r: DiscreteRegion) -> DiscreteRegion:
        # f(X \ E) = X \ f(E), so both modes map the stored set forward
        return DiscreteRegion({self.apply(x) for x in r.elements}, r.cofinite)

    def displacement(self):
        raise TypeError("no metric on the discrete space")

    def __eq__(self, other):
        return isinstance(other, FinPerm) and self.mapping == other.mapping

    def __hash__(self):
        return hash(frozenset(self.mapping.items()))

    def __repr__(self):
        if not self.mapping:
            return "perm()"
        body = "".join("(" + " ".join(str(x) for x in c) + ")"
                       for c in self.cycles())
        return f"perm({body})"


def make_mover(window: DiscreteRegion, p: int, forbid=(), parity: str = "any") -> FinPerm:
    """A permutation supported inside ``window`` moving p off ``forbid``:
    a transposition (p q), or a 3-cycle (p q r) when parity is "even".

    Raises ValueError when the window is too small (separation fails)."""
    if parity not in ("any", "even"):
        raise ValueError(f"unknown parity {parity!r}")
    if not window.contains(p):
        raise ValueError(f"{p} not in window {window}")
    forbid = set(forbid) | {p}
    picks = []
    need = 2 if parity == "even" else 1
    avoid = set(forbid)
    try:
        while len(picks) < need:
            q = window.pick_point(avoid)
            picks.append(q)
            avoid.add(q)
    except ValueError:
        raise ValueError(f"window {window} too small to move {p}")
    return FinPerm.from_cycles([[p] + picks])
