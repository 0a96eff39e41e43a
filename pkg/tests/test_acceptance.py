"""End-to-end acceptance suite: ten numbered checks, one test per check.

Checks 2 and 5 each contain one sub-claim about the running examples that
exact arithmetic contradicts; those asserts are kept faithful to the
stated expectation and fail with a message explaining the discrepancy.
"""

import itertools
import random
from fractions import Fraction as F

from oscsolve.finperm import FinPerm
from oscsolve.oscillation import (EXPLICITLY_OSCILLATING, OSCILLATING, RIGID,
                                  CONSTANT_NONTRIVIAL, BudgetError,
                                  is_explicitly_oscillating, osc_region,
                                  transition)
from oscsolve.regions import DISCRETE, INTERVAL, IntervalRegion, parse_region
from oscsolve.solver import (SolveError, solve_discrete, solve_oscillating,
                             solve_system, verify)
from oscsolve.thompson import cfp_interpolate, generator, rel_generator
from oscsolve.words import Const, Var, Word

from example_words import (W, a0, a1, a2, b1, make_commutator, make_w1,
                           make_w2, make_w3, make_w4, make_w5, make_w6,
                           make_w6_constants, x1)


def I(text):
    return parse_region(text)


def test_criterion_01_first_example_classification():
    c = transition(make_w1(), INTERVAL)
    assert c.verdict == EXPLICITLY_OSCILLATING
    assert c.region == I("(5/8,1)")


def test_criterion_02_one_step_splitting_example():
    c = transition(make_w2(), INTERVAL)
    assert c.verdict == OSCILLATING
    cells = {str(n.region) for n in c.levels[1]}
    assert cells == {"(0,1/4)", "(1/4,3/8)", "(3/8,1/2)", "(1/2,3/4)",
                     "(3/4,1)"}
    words = {str(n.region): n.word for n in c.levels[1]}
    assert words["(0,1/4)"] == W(Var(1), Const(a0.inverse()))
    assert words["(1/4,3/8)"] == W(Var(1), Const(a0.inverse() * a1))
    assert words["(3/8,1/2)"] == \
        W(Const(a0.inverse() * a1), Var(1), Const(a2.inverse()))
    assert words["(1/2,3/4)"] == W(Var(1))
    assert words["(3/4,1)"] == W(Var(1), Const(b1.inverse()))
    assert not words["(3/8,1/2)"].is_identity_word()
    mid = words["(3/8,1/2)"]
    assert not is_explicitly_oscillating(mid, INTERVAL, I("(3/8,1/2)")), (
        "expected the (3/8,1/2) specialization not to oscillate there, but "
        "supp(a0^-1 compose a1) = (0,7/16) meets supp(a2^-1) = (3/8,1/2) "
        "when the pullback is computed in application order, so its "
        f"oscillation region {osc_region(mid, INTERVAL)} is nonempty")
    assert c.hat == I("(0,3/8)u(1/2,1)"), (
        "expected the solvable region (0,3/8)u(1/2,1), but the nonempty "
        "contribution of the (3/8,1/2) cell extends it to "
        f"{c.hat}")


def test_criterion_03_region_and_constant_product_example():
    w3 = make_w3()
    f3 = osc_region(w3, INTERVAL)
    assert f3 == I("(1/2,1)")
    from oscsolve.words import to_form11
    assert to_form11(w3).product_of_constants().is_identity()
    w4 = make_w4()
    assert osc_region(w4, INTERVAL) == I("{}")
    prod = to_form11(w4).product_of_constants()
    assert prod == a0
    assert prod.support() == I("(0,1/2)")
    verdict = transition(w4, INTERVAL).verdict
    assert verdict in (CONSTANT_NONTRIVIAL, OSCILLATING)
    assert verdict != RIGID


def test_criterion_04_rigid_example():
    c = transition(make_w5(), INTERVAL)
    assert c.verdict == RIGID
    assert len(c.levels[1]) == 2
    assert all(n.word.is_identity_word() for n in c.levels[1])


def test_criterion_05_two_step_splitting_example():
    c = transition(make_w6(), INTERVAL)
    assert c.verdict == OSCILLATING
    assert {str(n.region) for n in c.levels[1]} == \
        {"(0,1/4)u(1/2,3/4)", "(1/4,1/2)u(3/4,1)"}
    assert len(c.levels) == 3
    witnesses = {str(n.region): n.word for n in c.p_os}
    assert set(witnesses) == {"(1/4,1/2)u(1/2,3/4)", "(0,1/4)u(3/4,1)"}
    vs = make_w6_constants()
    v1, v6, v7, v12 = vs[0], vs[5], vs[6], vs[11]
    assert witnesses["(0,1/4)u(3/4,1)"] == \
        W(Var(1), Var(2), Const(v6.compose(v1)), t=2)
    assert witnesses["(1/4,1/2)u(1/2,3/4)"] == \
        W(Var(1, -1), Var(2, -1), Const(v12.compose(v7)), t=2), (
        "expected the specialization y1^-1 y2^-1 (v12 v7), but dropping "
        "constants from the block form while keeping the variable blocks "
        "forces y1 y2 (v12 v7); the actual witness word is "
        f"{witnesses['(1/4,1/2)u(1/2,3/4)']}")


def test_criterion_06_certified_solutions():
    for mk in (make_w1, make_w2, make_w3, make_w6, make_commutator):
        w = mk()
        cert = solve_oscillating(w, INTERVAL)
        report = verify(cert)
        assert len(report.entries) == 5
        assert report.ok, f"{w}: {report}"
        assert not w.substitute(list(cert.solution)).is_identity()
    ws = [make_w1(), make_w3()]
    cert = solve_system(ws, INTERVAL, epsilon=F(1, 8))
    for w in ws:
        assert not w.substitute(list(cert.solution)).is_identity()
    assert all(g.displacement() <= F(1, 8) for g in cert.solution)
    assert verify(cert).ok


def test_criterion_07_presentation_relations():
    xs = [generator(n) for n in range(7)]
    for i in range(5):
        for j in range(i + 1, 5):
            assert xs[j] * xs[i] == xs[i] * xs[j + 1], (i, j)
    for i in (1, 2):
        a = xs[0] * xs[1].inverse()
        b = (xs[0] ** -i) * xs[1] * (xs[0] ** i)
        assert (a * b * a.inverse() * b.inverse()).is_identity(), i


def test_criterion_08_interpolation():
    rng = random.Random(20240823)

    def partition(n):
        pts = sorted(rng.sample([F(k, 64) for k in range(1, 64)], n))
        return [F(0)] + pts + [F(1)]

    for _ in range(50):
        n = rng.randrange(0, 5)  # length <= 6
        xs, ys = partition(n), partition(n)
        f = cfp_interpolate(xs, ys)
        for x, y in zip(xs, ys):
            assert f.evaluate(x) == y
        for (t0, v0), (t1, v1) in zip(f.breakpoints, f.breakpoints[1:]):
            s = (v1 - v0) / (t1 - t0)
            assert s.numerator & (s.numerator - 1) == 0
            assert s.denominator & (s.denominator - 1) == 0
        if n >= 1:
            # force one panel to coincide and require rigidity there
            k = rng.randrange(0, n + 1)
            ys2 = list(xs)
            f2 = cfp_interpolate(xs, ys2, rigid=k + 1)
            a, b = xs[k], xs[k + 1]
            for q in (a + (b - a) / 4, a + (b - a) / 2):
                assert f2.evaluate(q) == q


def _random_small_perm(rng):
    pts = rng.sample(range(5), rng.randrange(2, 5))
    rotated = pts[1:] + pts[:1]
    return FinPerm(dict(zip(pts, rotated)))


def _oracle_has_solution(w, budget=200000):
    """Exhaustive search over tuples with growing support; independent of
    the solver."""
    for m in range(1, 9):
        perms = [FinPerm(dict(zip(range(m + 1), sigma)))
                 for sigma in itertools.permutations(range(m + 1))]
        for tup in itertools.product(perms, repeat=w.arity):
            budget -= 1
            if budget <= 0:
                raise AssertionError(f"oracle budget exhausted on {w}")
            if not w.substitute(list(tup)).is_identity():
                return True
    return False


def test_criterion_09_discrete_solver_soundness():
    # deterministic sample of reduced words: arity <= 2, <= 2 constants
    # supported in {0..4}, <= 4 variable letters
    rng = random.Random(99)
    seen = set()
    words = []
    while len(words) < 300:
        arity = rng.randrange(1, 3)
        n_const = rng.randrange(0, 3)
        n_letters = rng.randrange(1, 5)
        sylls = []
        for _ in range(n_letters):
            sylls.append(Var(rng.randrange(1, arity + 1),
                             rng.choice([-1, 1])))
        for _ in range(n_const):
            sylls.insert(rng.randrange(0, len(sylls) + 1),
                         Const(_random_small_perm(rng)))
        w = Word(arity, sylls)
        if w.is_identity_word() or w.is_constant_only() or w in seen:
            continue
        seen.add(w)
        words.append(w)
    solved = 0
    for w in words:
        try:
            cert = solve_discrete(w)
        except (SolveError, BudgetError):
            continue
        report = verify(cert)
        assert report.ok, f"{w}: {report}"
        assert _oracle_has_solution(w), w
        solved += 1
    assert solved > 200


def test_criterion_10_property_suites():
    # (a) reduction idempotence and substitution homomorphism
    rng = random.Random(101)
    perm_pool = [FinPerm.from_cycles([c]) for c in
                 [(0, 1), (1, 2, 3), (0, 4), (2, 3)]]
    for _ in range(1000):
        sylls = []
        for _ in range(rng.randrange(0, 6)):
            if rng.random() < 0.5:
                sylls.append(Var(rng.randrange(1, 3),
                                 rng.choice([-2, -1, 1, 2])))
            else:
                sylls.append(Const(rng.choice(perm_pool)))
        w = Word(2, sylls)
        assert Word(2, w.syllables) == w
        w2 = Word(2, list(reversed(sylls)))
        tup = [rng.choice(perm_pool), rng.choice(perm_pool)]
        assert (w * w2).substitute(tup) == \
            w.substitute(tup).compose(w2.substitute(tup))

    # (b) region Boolean-algebra laws
    rng = random.Random(102)

    def rand_region():
        pieces = []
        for _ in range(rng.randrange(0, 4)):
            a = F(rng.randrange(0, 63), 64)
            b = a + F(rng.randrange(1, 12), 64)
            pieces.append((a, min(b, F(1))))
        return IntervalRegion(pieces)

    for _ in range(1000):
        a, b, c = rand_region(), rand_region(), rand_region()
        assert a.union(b) == b.union(a)
        assert a.intersect(b.union(c)) == \
            a.intersect(b).union(a.intersect(c))
        assert a.union(b.intersect(c)) == a.union(b).intersect(a.union(c))
        assert a.difference(b).intersect(b).is_empty()

    # (c) supp(fg) subset of supp(f) u supp(g)
    rng = random.Random(103)
    pl_pool = [generator(n) for n in range(3)]
    pl_pool += [rel_generator(0, F(1, 2), 0),
                rel_generator(F(1, 4), F(3, 4), 1)]
    for _ in range(1000):
        f = rng.choice(pl_pool) ** rng.choice([-2, -1, 1, 2])
        g = rng.choice(pl_pool) ** rng.choice([-2, -1, 1, 2])
        assert (f * g).support().is_subset(
            f.support().union(g.support()).regularize())

    # (d) apply_region distributes over union and intersection
    rng = random.Random(104)
    for _ in range(1000):
        f = rng.choice(pl_pool) ** rng.choice([-1, 1])
        r, s = rand_region(), rand_region()
        assert f.apply_region(r.union(s)) == \
            f.apply_region(r).union(f.apply_region(s))
        assert f.apply_region(r.intersect(s)) == \
            f.apply_region(r).intersect(f.apply_region(s))

    # (e) splitting strictly decreases the constant count on every edge;
    # constants with disjoint supports keep the oscillation region empty,
    # so most sampled words actually reach the splitting
    rng = random.Random(105)
    quarters = [rel_generator(F(k, 4), F(k + 1, 4), 0) for k in range(4)]
    split_pool = quarters + [q.inverse() for q in quarters] + pl_pool[:2]
    edges = 0
    for _ in range(1000):
        sylls = []
        for _ in range(rng.randrange(2, 7)):
            if rng.random() < 0.45:
                sylls.append(Var(rng.randrange(1, 3), rng.choice([-1, 1])))
            else:
                sylls.append(Const(rng.choice(split_pool)))
        w = Word(2, sylls)
        if (w.is_identity_word() or w.is_constant_only()
                or w.is_variable_only()):
            continue
        try:
            c = transition(w, INTERVAL)
        except BudgetError:
            continue
        for level in c.levels[1:]:
            for node in level:
                assert node.constant_count() < node.parent.constant_count()
                edges += 1
    assert edges > 300
