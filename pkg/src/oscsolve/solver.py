"""Constructive solutions of mixed inequalities w(y) != 1.

The core routine walks a word letter by letter from a base point inside a
sub-region of its oscillation region.  Whenever the next trajectory point
would revisit an earlier one, exactly one tuple entry is corrected by a
small mover supported in a neighborhood that every tracked region either
contains or misses entirely, so the correction never disturbs the points
already placed or the declared invariant regions.  The result is a
certificate carrying the tuple, the trajectory and the declared support
and invariance bounds; ``verify`` re-checks everything from scratch.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from . import finperm, thompson
from .oscillation import (CONSTANT_NONTRIVIAL, DEFAULT_MAX_CONSTANTS,
                          EXPLICITLY_OSCILLATING, OSCILLATING, _expand,
                          TransitionNode, family_points, gab_cells,
                          osc_region, transition, v_family)
from .regions import DISCRETE, DiscreteRegion, Space
from .words import Form12, Word, to_form11

SYSTEM_HALVING_BUDGET = 64


class SolveError(Exception):
    """The solver cannot produce a certificate for this input; carries the
    classification when one was computed."""

    def __init__(self, message, classification=None):
        super().__init__(message)
        self.classification = classification


class WordRecord:
    """Per-word part of a certificate: the inequality, the word actually
    walked (a constant-tail conjugate or a specialization of the input)
    and its trajectory."""

    __slots__ = ("word", "trajectory_word", "conjugator", "kind",
                 "base_point", "trajectory", "note")

    def __init__(self, word, trajectory_word, conjugator, kind,
                 base_point, trajectory, note=""):
        self.word = word
        self.trajectory_word = trajectory_word
        self.conjugator = conjugator
        self.kind = kind              # "distinctive" or "pair"
        self.base_point = base_point
        self.trajectory = tuple(trajectory)
        self.note = note

    def __repr__(self):
        return (f"WordRecord({self.word}, kind={self.kind}, "
                f"base={self.base_point})")


class Certificate:
    """A checkable solution of one or more inequalities."""

    __slots__ = ("space", "kind", "records", "solution", "support_bound",
                 "invariant_regions", "epsilon", "notes")

    def __init__(self, space, kind, records, solution, support_bound,
                 invariant_regions, epsilon, notes):
        self.space = space
        self.kind = kind              # "distinctive" or "identity-tuple"
        self.records = tuple(records)
        self.solution = tuple(solution)
        self.support_bound = support_bound
        self.invariant_regions = tuple(invariant_regions)
        self.epsilon = epsilon
        self.notes = tuple(notes)

    @property
    def words(self):
        return [r.word for r in self.records]

    def __repr__(self):
        return (f"Certificate({self.kind}, {len(self.records)} word(s), "
                f"arity {len(self.solution)})")


class VerificationReport:
    """Outcome of the five certificate checks."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(entries)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.entries)

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "\n".join(f"{'PASS' if ok else 'FAIL'} {name}: {detail}"
                         for name, ok, detail in self.entries)


def _identity_of(space: Space):
    if space.is_interval:
        return thompson.PLMap.identity()
    return finperm.FinPerm.identity()


def trajectory_atoms(word: Word):
    """The word as a sequence of elementary steps, rightmost first:
    ("const", elem) and ("letter", j, e) with e = +-1.  A word with
    constants must already end in a constant."""
    if word.is_variable_only():
        out = []
        for s in reversed(word.syllables):
            e = 1 if s.power > 0 else -1
            out.extend([("letter", s.idx, e)] * abs(s.power))
        return out
    form = to_form11(word)
    if not form.conjugator.is_identity_word():
        raise ValueError("word must be in constant-tail form")
    f12 = Form12(form)
    out = []
    for j, (_, v) in enumerate(form.pairs):
        out.append(("const", v))
        for letter in f12.letters[j]:
            out.append(("letter", letter.idx, letter.power))
    return out


def run_trajectory(atoms, tup, p):
    """Points visited while applying the steps to p, starting with p."""
    pts = [p]
    for atom in atoms:
        x = pts[-1]
        if atom[0] == "const":
            pts.append(atom[1].apply_point(x))
        else:
            _, j, e = atom
            g = tup[j - 1] if e == 1 else tup[j - 1].inverse()
            pts.append(g.apply_point(x))
    return pts


def claim_m_neighborhood(q, base, family, space: Space):
    """An open neighborhood of q inside base that every family member
    either contains or misses entirely."""
    try:
        hood = base.component_containing(q) if space.is_interval else base
        for V in family:
            if V.contains(q):
                hood = hood.intersect(V)
            else:
                hood = space.interior_complement(V, within=hood)
        if space.is_interval:
            hood = hood.component_containing(q)
    except ValueError as exc:
        raise SolveError(f"no neighborhood at {q}: {exc}") from None
    if not hood.contains(q):
        raise SolveError(f"no neighborhood at {q}")
    return hood


def _forbidden_points(vs, family, max_constants):
    """Finite point set the trajectory must avoid: every boundary point of
    every tracked region, pushed forward through the signed products and
    pulled back through their inverses (so that no image of a trajectory
    point under any partial product can land on a boundary)."""
    src = []
    for V in family:
        for b in V.boundary_points():
            if b not in src:
                src.append(b)
    if not vs or not src:
        return src
    fwd = family_points(vs, src, "signed", max_constants)
    return family_points(vs, fwd, "inverse", max_constants)


def _window(space: Space, hood, q, punctures, cap):
    """Part of the neighborhood around q that avoids the punctures; with a
    diameter cap the interval window is shrunk around q."""
    if space.is_interval:
        win = hood
        for pt in punctures:
            if win.contains(pt):
                win = win.remove_point(pt)
        comp = win.component_containing(q)
        a, b = comp.intervals[0]
        if cap is not None:
            a = max(a, q - cap / 2)
            b = min(b, q + cap / 2)
        return (a, b)
    return hood.difference(DiscreteRegion(punctures))


def _mover(space: Space, window, q, forbid, parity):
    if space.is_interval:
        return thompson.make_mover(window, q, forbid)
    try:
        return finperm.make_mover(window, q, forbid, parity)
    except ValueError as exc:
        raise SolveError(f"separation failed: {exc}") from None


def solve_explicit(w: Word, space: Space, region=None, epsilon=None,
                   extra_invariant=(), parity="any",
                   family_variant="signed",
                   max_constants=DEFAULT_MAX_CONSTANTS) -> Certificate:
    """A distinctive tuple for an explicitly oscillating word: the full
    trajectory of the base point is pairwise distinct, so w(g)(p) != p.

    region, when given, must lie inside the oscillation region; movers are
    confined to its image family, every member of which ends up setwise
    invariant under each returned element, as do all extra_invariant
    regions.  With epsilon, every element moves no point by more than
    epsilon (interval space only)."""
    if w.is_identity_word() or w.is_constant_only():
        raise SolveError("only words with variables can be solved")
    if epsilon is not None:
        if not space.is_interval:
            raise SolveError("displacement bounds need the interval metric")
        epsilon = Fraction(epsilon)
        if epsilon <= 0:
            raise SolveError("epsilon must be positive")
    if w.is_variable_only():
        form = None
        walk = w
        conj = Word.identity(w.arity)
        vs = []
        O = space.ambient()
    else:
        form = to_form11(w)
        walk = form.normalized_word()
        conj = form.conjugator
        vs = form.constants()
        O = osc_region(form, space)
        if O.is_empty():
            raise SolveError("word is not explicitly oscillating; "
                             "use solve_oscillating")
    O1 = O if region is None else region
    if O1.is_empty():
        raise SolveError("empty base region")
    if not O1.is_subset(O):
        raise SolveError("base region must lie inside the oscillation region")
    atoms = trajectory_atoms(walk)
    cap = None if epsilon is None else Fraction(epsilon) / (len(atoms) + 1)
    bases = [O1]
    for v in vs:
        bases.append(v.apply_region(bases[-1]))
    if form is None:
        fam = [O1]
    elif family_variant == "positive":
        fam = [O1] + v_family(form, O1, "positive", max_constants)
    else:
        fam = v_family(form, O1, family_variant, max_constants)
    family = list(fam)
    for V in extra_invariant:
        if V not in family:
            family.append(V)
    S = set(_forbidden_points(vs, family, max_constants))
    avoid = set(S)
    if vs:
        vinv = vs[0].inverse()
        avoid |= {vinv.apply_point(s) for s in S}
    p = O1.pick_point(avoid)
    tup = [_identity_of(space)] * w.arity
    traj = [p]
    d = 0                 # constants applied so far
    prev_letter = None    # (j, e) of the most recent letter step
    for atom in atoms:
        x = traj[-1]
        seen = set(traj)
        if atom[0] == "const":
            v = atom[1]
            q = v.apply_point(x)
            if q in seen or q in S:
                # the mark collides: move the source point by correcting
                # the previous letter's entry
                if prev_letter is None:
                    raise SolveError("base point preparation failed")
                j, e = prev_letter
                vin = v.inverse()
                block = seen | S
                pulled = {vin.apply_point(a) for a in block}
                hood = claim_m_neighborhood(x, bases[d], family, space)
                win = _window(space, hood, x, (seen - {x}) | S | pulled, cap)
                m = _mover(space, win, x, block | pulled, parity)
                g = tup[j - 1]
                tup[j - 1] = m.compose(g) if e == 1 else g.compose(m.inverse())
                x = m.apply_point(x)
                traj[-1] = x
                seen = set(traj)
                q = v.apply_point(x)
                if q in seen or q in S:
                    raise SolveError("mark correction failed")
            traj.append(q)
            d += 1
        else:
            _, j, e = atom
            g = tup[j - 1]
            y = (g if e == 1 else g.inverse()).apply_point(x)
            if y in seen or y in S:
                block = seen | S
                hood = claim_m_neighborhood(x, bases[d], family, space)
                win = _window(space, hood, x, (seen - {x}) | S, cap)
                if e == 1:
                    gin = g.inverse()
                    m = _mover(space, win, x,
                               {gin.apply_point(a) for a in block}, parity)
                    tup[j - 1] = g.compose(m)
                    y = tup[j - 1].apply_point(x)
                else:
                    m = _mover(space, win, x,
                               {g.apply_point(a) for a in block}, parity)
                    tup[j - 1] = m.inverse().compose(g)
                    y = tup[j - 1].inverse().apply_point(x)
                if y in seen or y in S:
                    raise SolveError("letter correction failed")
            traj.append(y)
            prev_letter = (j, e)
    if len(set(traj)) != len(traj):
        raise SolveError("trajectory points not pairwise distinct")
    if run_trajectory(atoms, tup, p) != traj:
        raise SolveError("trajectory replay mismatch")
    if w.substitute(tup).is_identity():
        raise SolveError("distinctive trajectory failed to separate the word")
    bound = space.empty()
    for b in bases:
        bound = bound.union(b)
    rec = WordRecord(w, walk, conj, "distinctive", p, traj)
    return Certificate(space, "distinctive", [rec], tup, bound,
                       family, epsilon, ())


def _identity_tuple_certificate(w, space, form, notes) -> Certificate:
    prod = form.product_of_constants()
    p = prod.support().intersect(space.ambient()).pick_point()
    tup = [_identity_of(space)] * w.arity
    rec = WordRecord(w, None, form.conjugator, "pair", p,
                     (p, prod.apply_point(p)),
                     "non-trivial product of constants; the identity tuple "
                     "already solves the inequality")
    return Certificate(space, "identity-tuple", [rec], tup, space.empty(),
                       (), None, notes)


def _witness_contribution(node: TransitionNode, space: Space):
    if node.word.is_variable_only():
        return node.region
    return node.region.intersect(osc_region(node.word, space))


def _choose_witness(c, space):
    """First oscillation witness with an infinite (preferred) contribution."""
    best = None
    for n in c.p_os:
        contrib = _witness_contribution(n, space)
        if contrib.is_empty():
            continue
        if contrib.is_infinite():
            return n, contrib
        if best is None:
            best = (n, contrib)
    if best is None:
        raise SolveError("no usable oscillation witness", c)
    return best


def _chain_invariants(node: TransitionNode, max_constants):
    """The signed image families required along the splitting path: for
    each edge, the parent word's signed products applied to the child's
    cell.  Keeping all of them setwise invariant makes the input word act
    exactly like the specialized word on the deepest cell."""
    out = []
    cur = node
    while cur.parent is not None:
        pw = cur.parent.word
        if pw.constant_count() > 0:
            pf = to_form11(pw)
            for V in v_family(pf, cur.region, "signed", max_constants):
                if V not in out:
                    out.append(V)
        cur = cur.parent
    return out


def _solve_on_witness(w, space, node, contrib, epsilon, parity,
                      max_constants, base_notes) -> Certificate:
    extra = _chain_invariants(node, max_constants)
    sub = solve_explicit(node.word, space, region=contrib, epsilon=epsilon,
                         extra_invariant=extra, parity=parity,
                         max_constants=max_constants)
    if w.substitute(list(sub.solution)).is_identity():
        raise SolveError("specialization solve did not separate the word")
    base = sub.records[0]
    note = (f"solved via the specialization {node.word} on the "
            f"invariant cell {node.region}")
    rec = WordRecord(w, base.trajectory_word, base.conjugator, "distinctive",
                     base.base_point, base.trajectory, note)
    return Certificate(space, "distinctive", [rec], sub.solution,
                       sub.support_bound, sub.invariant_regions, epsilon,
                       tuple(base_notes) + (note,))


def solve_oscillating(w: Word, space: Space, classification=None,
                      epsilon=None, parity="any",
                      max_constants=DEFAULT_MAX_CONSTANTS) -> Certificate:
    """Solve w != 1 for any non-rigid word: directly when it oscillates
    explicitly, otherwise through the first usable witness cell of the
    splitting procedure, keeping the word's whole signed image family of
    that cell invariant so the specialization argument applies; the
    original word is always re-checked directly."""
    c = classification
    if c is None:
        c = transition(w, space, max_constants)
    if c.verdict == CONSTANT_NONTRIVIAL:
        return _identity_tuple_certificate(w, space, to_form11(w), c.notes)
    if c.verdict == EXPLICITLY_OSCILLATING:
        return solve_explicit(w, space, epsilon=epsilon, parity=parity,
                              max_constants=max_constants)
    if c.verdict != OSCILLATING:
        raise SolveError(f"word classified {c.verdict}: no solution "
                         "is constructed", c)
    node, contrib = _choose_witness(c, space)
    try:
        return _solve_on_witness(w, space, node, contrib, epsilon, parity,
                                 max_constants, c.notes)
    except SolveError as exc:
        exc.classification = c
        raise


def solve_system(ws, space: Space, regions=None, epsilon=None, parity="any",
                 max_constants=DEFAULT_MAX_CONSTANTS) -> Certificate:
    """One tuple solving several inequalities at once: each word gets its
    own small ball, the balls are halved until the words' image families
    are pairwise disjoint, and the per-word solutions compose without
    interference because their supports live in their own families."""
    if not space.is_interval:
        raise SolveError("systems are solved over the interval space "
                         "(ball shrinking needs a metric)")
    ws = list(ws)
    if not ws:
        raise SolveError("empty system")
    arity = ws[0].arity
    if any(w.arity != arity for w in ws):
        raise SolveError("all words in a system must share the arity")
    classifications = [transition(w, space, max_constants) for w in ws]
    for w, c in zip(ws, classifications):
        if c.verdict not in (EXPLICITLY_OSCILLATING, OSCILLATING):
            raise SolveError(f"word {w} classified {c.verdict}: the system "
                             "is rejected", c)
    if regions is not None and len(regions) != len(ws):
        raise SolveError("one region per word required")
    # per word: the node and sub-region the trajectory will live on
    plans = []
    for idx, (w, c) in enumerate(zip(ws, classifications)):
        target = c.hat if regions is None else regions[idx]
        if not target.is_subset(c.hat):
            raise SolveError(f"region {target} is not inside the solvable "
                             f"region {c.hat} of {w}", c)
        if c.verdict == EXPLICITLY_OSCILLATING:
            candidates = [(None, c.region)]
        else:
            candidates = [(n, _witness_contribution(n, space))
                          for n in c.p_os]
        for node, contrib in candidates:
            pocket = contrib.intersect(target)
            if not pocket.is_empty():
                plans.append((w, c, node, pocket))
                break
        else:
            raise SolveError(f"no witness region of {w} meets {target}", c)
    forms = [to_form11(w) if not w.is_variable_only() else None
             for w, _, _, _ in plans]
    # base points whose image families are pairwise disjoint point sets
    points = []
    fam_points = []
    for (w, c, node, pocket), f in zip(plans, forms):
        vs = f.constants() if f is not None else []
        avoid = set(pocket.boundary_points())
        for pts in fam_points:
            avoid.update(pts)
            if vs:
                avoid.update(family_points(vs, pts, "inverse", max_constants))
        o = pocket.pick_point(avoid)
        points.append(o)
        fam_points.append(family_points(vs, [o], "signed", max_constants)
                          if vs else [o])
    # shrink balls until the image families are pairwise disjoint regions
    radii = []
    for (w, c, node, pocket), o in zip(plans, points):
        a, b = pocket.component_containing(o).intervals[0]
        radii.append(min(o - a, b - o) / 2)
    for _ in range(SYSTEM_HALVING_BUDGET):
        balls = [pocket.component_containing(o).intersect(
                     space.ambient().intersect(
                         type(pocket).interval(o - r, o + r)))
                 for (w, c, node, pocket), o, r in zip(plans, points, radii)]
        unions = []
        for ball, f in zip(balls, forms):
            tot = space.empty()
            for V in (v_family(f, ball, "signed", max_constants)
                      if f is not None else [ball]):
                tot = tot.union(V)
            unions.append(tot)
        if all(unions[i].intersect(unions[j]).is_empty()
               for i in range(len(unions)) for j in range(i + 1, len(unions))):
            break
        radii = [r / 2 for r in radii]
    else:
        raise SolveError("ball separation budget exceeded")
    # sequential solves, composed coordinatewise
    tup = [_identity_of(space)] * arity
    records = []
    bound = space.empty()
    invariants = []
    notes = []
    for k, ((w, c, node, pocket), ball) in enumerate(zip(plans, balls)):
        if node is None:
            sub = solve_explicit(w, space, region=ball, epsilon=epsilon,
                                 parity=parity, max_constants=max_constants)
        else:
            sub = _solve_on_witness(w, space, node, ball, epsilon, parity,
                                    max_constants, ())
        tup = [f.compose(g) for f, g in zip(sub.solution, tup)]
        records.extend(sub.records)
        bound = bound.union(sub.support_bound)
        for V in sub.invariant_regions:
            if V not in invariants:
                invariants.append(V)
        notes.extend(sub.notes)
        for wj in ws[:k + 1]:
            if wj.substitute(tup).is_identity():
                raise SolveError(f"system step {k + 1} broke the solution "
                                 f"of {wj}")
    return Certificate(space, "distinctive", records, tup, bound,
                       invariants, epsilon, notes)


def _deep_witnesses(w: Word, space: Space, max_constants):
    """All specialization candidates over the discrete space: run the
    splitting past the first witness level, since usable (infinite) cells
    can appear below finite ones."""
    f = to_form11(w)
    root = TransitionNode(space.ambient(), f.normalized_word(), 0)
    frontier = [root]
    out = []
    while frontier:
        nxt = []
        for node in frontier:
            for child in _expand(node, space, max_constants):
                cw = child.word
                if cw.is_identity_word():
                    continue
                contrib = _witness_contribution(child, space)
                if not contrib.is_empty():
                    out.append((child, contrib))
                if 0 < cw.constant_count() < node.word.constant_count():
                    nxt.append(child)
        frontier = nxt
    # prefer infinite cells, then shallower levels; keep discovery order
    out.sort(key=lambda nc: (not nc[1].is_infinite(), nc[0].level))
    return out


DIRECT_SEARCH_BUDGET = 500000


def _bounded_search(w: Word, parity, budget=DIRECT_SEARCH_BUDGET):
    """Deterministic direct search over permutation tuples with growing
    support; sound by construction (the tuple is checked by evaluation)."""
    space = DISCRETE
    pts = set()
    if not w.is_variable_only():
        for v in to_form11(w).constants():
            pts.update(v.support().elements)
    top = (max(pts) if pts else 1) + 3
    for m in range(1, top + 1):
        perms = []
        for sigma in itertools.permutations(range(m + 1)):
            g = finperm.FinPerm({i: sigma[i] for i in range(m + 1)})
            if parity == "even" and not g.is_identity() and g.sign() != 1:
                continue
            perms.append(g)
        for tup in itertools.product(perms, repeat=w.arity):
            budget -= 1
            if budget <= 0:
                raise SolveError("direct search budget exceeded")
            val = w.substitute(list(tup))
            if val.is_identity():
                continue
            p = val.support().pick_point()
            bound = space.empty()
            for g in tup:
                bound = bound.union(g.support())
            rec = WordRecord(w, None, Word.identity(w.arity), "pair", p,
                             (p, val.apply_point(p)),
                             "found by bounded direct search")
            return Certificate(space, "distinctive", [rec], tup, bound,
                               (), None, ("found by bounded direct search",))
    return None


def solve_discrete(w: Word, parity="any",
                   max_constants=DEFAULT_MAX_CONSTANTS) -> Certificate:
    """Solve w != 1 over finitary permutations: identity tuple when the
    product of constants is non-trivial; the distinctive-trajectory
    induction on the positive-image cells when every nonempty cell is
    infinite; otherwise a specialization on some infinite splitting cell."""
    space = DISCRETE
    if w.is_identity_word() or w.is_constant_only():
        raise SolveError("only words with variables can be solved")
    if w.is_variable_only():
        return solve_explicit(w, space, parity=parity,
                              max_constants=max_constants)
    form = to_form11(w)
    prod = form.product_of_constants()
    if not prod.is_identity():
        return _identity_tuple_certificate(
            w, space, form, ("non-trivial product of constants",))
    O = osc_region(form, space)
    if not O.is_empty():
        _, separation = gab_cells(form, space, max_constants)
        if separation:
            return solve_explicit(w, space, parity=parity,
                                  family_variant="positive",
                                  max_constants=max_constants)
    failures = []
    for node, contrib in _deep_witnesses(w, space, max_constants):
        try:
            return _solve_on_witness(w, space, node, contrib, None, parity,
                                     max_constants, ())
        except SolveError as exc:
            failures.append(f"cell {node.region}: {exc}")
    found = _bounded_search(w, parity)
    if found is not None:
        return found
    c = transition(w, space, max_constants, force=True)
    detail = ("; ".join(failures) if failures
              else "no usable splitting cell found")
    raise SolveError(f"no solution constructed for {w}: {detail}", c)


def verify(cert: Certificate) -> VerificationReport:
    """Re-check a certificate from scratch; failures become report entries,
    never exceptions."""
    entries = []
    tup = list(cert.solution)
    # 1: every inequality holds under direct evaluation
    bad = []
    for rec in cert.records:
        try:
            if rec.word.substitute(tup).is_identity():
                bad.append(str(rec.word))
        except Exception as exc:
            bad.append(f"{rec.word}: {exc}")
    entries.append(("inequality", not bad,
                    "all words evaluate away from the identity" if not bad
                    else f"identity reached for: {'; '.join(bad)}"))
    # 2: trajectories are pairwise distinct and replay exactly
    bad = []
    for rec in cert.records:
        try:
            pts = list(rec.trajectory)
            if len(set(pts)) != len(pts):
                bad.append(f"{rec.word}: duplicated trajectory point")
                continue
            if not pts or pts[0] != rec.base_point:
                bad.append(f"{rec.word}: trajectory does not start at the "
                           "base point")
                continue
            if rec.kind == "pair":
                img = rec.word.substitute(tup).apply_point(rec.base_point)
                if pts != [rec.base_point, img]:
                    bad.append(f"{rec.word}: pair does not replay")
            else:
                atoms = trajectory_atoms(rec.trajectory_word)
                if run_trajectory(atoms, tup, rec.base_point) != pts:
                    bad.append(f"{rec.word}: trajectory does not replay")
        except Exception as exc:
            bad.append(f"{rec.word}: {exc}")
    entries.append(("trajectory", not bad,
                    "all trajectories distinct and replayed" if not bad
                    else "; ".join(bad)))
    # 3: supports inside the declared bound
    bad = []
    for i, g in enumerate(tup):
        if not g.support().is_subset(cert.support_bound):
            bad.append(f"g_{i + 1} has support {g.support()} outside "
                       f"{cert.support_bound}")
    entries.append(("support", not bad,
                    "all supports inside the declared bound" if not bad
                    else "; ".join(bad)))
    # 4: declared regions are setwise invariant
    bad = []
    for V in cert.invariant_regions:
        for i, g in enumerate(tup):
            if g.apply_region(V) != V:
                bad.append(f"g_{i + 1} moves {V}")
    entries.append(("invariance", not bad,
                    "all declared regions setwise invariant" if not bad
                    else "; ".join(bad)))
    # 5: displacement bound
    if cert.epsilon is None:
        entries.append(("displacement", True, "no bound requested"))
    else:
        bad = []
        for i, g in enumerate(tup):
            try:
                disp = g.displacement()
            except TypeError:
                bad.append(f"g_{i + 1} has no displacement")
                continue
            if disp > cert.epsilon:
                bad.append(f"g_{i + 1} moves a point by {disp} "
                           f"> {cert.epsilon}")
        entries.append(("displacement", not bad,
                        f"all displacements within {cert.epsilon}"
                        if not bad else "; ".join(bad)))
    return VerificationReport(entries)
