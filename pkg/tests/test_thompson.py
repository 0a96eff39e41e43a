import random
from fractions import Fraction as F

import pytest

from oscsolve.regions import IntervalRegion
from oscsolve.thompson import (PLMap, cfp_interpolate, generator, make_mover,
                               rel_generator, rescale)


def I(*pairs):
    return IntervalRegion(pairs)


def commutator(a, b):
    return a * b * a.inverse() * b.inverse()


class TestPLMap:
    def test_identity(self):
        e = PLMap.identity()
        assert e.is_identity()
        assert e.evaluate(F(1, 3)) == F(1, 3)

    def test_canonicalization_drops_collinear_points(self):
        assert PLMap([(0, 0), (F(1, 2), F(1, 2)), (1, 1)]) == PLMap.identity()

    def test_validation(self):
        with pytest.raises(ValueError):
            PLMap([(0, 0), (F(1, 2), F(1, 4))])  # does not fix 1
        with pytest.raises(ValueError):
            PLMap([(0, 0), (F(1, 3), F(1, 2)), (1, 1)])  # non-dyadic
        with pytest.raises(ValueError):
            PLMap([(0, 0), (F(1, 2), F(3, 8)), (F(5, 8), F(1, 2)), (1, 1)])

    def test_generator_values(self):
        x0 = generator(0)
        assert x0.evaluate(F(1, 2)) == F(1, 4)
        assert x0.evaluate(F(3, 4)) == F(1, 2)
        assert x0.evaluate(F(7, 8)) == F(3, 4)
        x1 = generator(1)
        assert x1.evaluate(F(3, 4)) == F(5, 8)
        assert x1.evaluate(F(1, 4)) == F(1, 4)

    def test_inverse_and_compose(self):
        x1 = generator(1)
        assert (x1 * x1.inverse()).is_identity()
        x2 = generator(2)
        p = F(13, 16)
        assert (x1 * x2).evaluate(p) == x1.evaluate(x2.evaluate(p))

    def test_power(self):
        x0 = generator(0)
        assert x0 ** 0 == PLMap.identity()
        assert x0 ** 3 == x0 * x0 * x0
        assert x0 ** -2 == (x0.inverse()) * (x0.inverse())

    def test_presentation_relations(self):
        # x_j x_i = x_i x_{j+1} for 0 <= i < j <= 4
        xs = [generator(n) for n in range(7)]
        for i in range(5):
            for j in range(i + 1, 5):
                assert xs[j] * xs[i] == xs[i] * xs[j + 1], (i, j)
        # [x0 x1^-1, x0^-i x1 x0^i] = 1 for i = 1, 2
        for i in (1, 2):
            a = xs[0] * xs[1].inverse()
            b = (xs[0] ** -i) * xs[1] * (xs[0] ** i)
            assert commutator(a, b).is_identity(), i

    def test_support(self):
        assert generator(1).support() == I((F(1, 2), 1))
        assert generator(2).support() == I((F(3, 4), 1))
        assert PLMap.identity().support() == I()
        # interior fixed point punctures the support
        a = rel_generator(0, F(1, 2), 0)
        b = rel_generator(F(1, 2), 1, 0)
        assert (a * b).support() == I((0, F(1, 2)), (F(1, 2), 1))

    def test_support_of_product_is_contained_in_union(self):
        rng = random.Random(7)
        pool = [generator(n) for n in range(3)]
        pool += [rel_generator(0, F(1, 2), 0), rel_generator(F(1, 4), F(3, 4), 1)]
        for _ in range(200):
            f = rng.choice(pool) ** rng.choice([-2, -1, 1, 2])
            g = rng.choice(pool) ** rng.choice([-2, -1, 1, 2])
            assert (f * g).support().is_subset(
                f.support().union(g.support()).regularize())

    def test_apply_region_distributes(self):
        rng = random.Random(8)
        pool = [generator(n) ** k for n in range(3) for k in (-1, 1)]

        def rand_region():
            pieces = []
            for _ in range(rng.randrange(0, 3)):
                a = F(rng.randrange(0, 31), 32)
                b = a + F(rng.randrange(1, 8), 32)
                pieces.append((a, min(b, F(1))))
            return IntervalRegion(pieces)

        for _ in range(300):
            f = rng.choice(pool)
            r, s = rand_region(), rand_region()
            assert f.apply_region(r.union(s)) == \
                f.apply_region(r).union(f.apply_region(s))
            assert f.apply_region(r.intersect(s)) == \
                f.apply_region(r).intersect(f.apply_region(s))

    def test_displacement(self):
        assert PLMap.identity().displacement() == 0
        assert generator(0).displacement() == F(1, 4)

    def test_repr_is_canonical(self):
        assert repr(generator(1)) == \
            "pl{(0,0)(1/2,1/2)(3/4,5/8)(7/8,3/4)(1,1)}"


class TestRescale:
    def test_rel_generator_is_rescaled_generator(self):
        g = rel_generator(0, F(1, 2), 0)
        x0 = generator(0)
        assert g.evaluate(F(1, 4)) == x0.evaluate(F(1, 2)) / 2
        assert g.support() == I((0, F(1, 2)))
        assert g.evaluate(F(3, 4)) == F(3, 4)

    def test_rescale_is_homomorphism(self):
        x0, x1 = generator(0), generator(1)
        r = lambda f: rescale(f, F(1, 4), F(3, 4))
        assert r(x0 * x1) == r(x0) * r(x1)
        assert r(x0.inverse()) == r(x0).inverse()

    def test_rescale_rejects_bad_interval(self):
        with pytest.raises(ValueError):
            rescale(generator(0), F(1, 3), F(2, 3))


class TestCfpInterpolate:
    def test_prescribed_points_hit(self):
        xs = [F(0), F(1, 4), F(1, 2), F(1)]
        ys = [F(0), F(1, 2), F(5, 8), F(1)]
        f = cfp_interpolate(xs, ys)
        for x, y in zip(xs, ys):
            assert f.evaluate(x) == y

    def test_random_partitions(self):
        rng = random.Random(20240818)

        def rand_partition():
            n = rng.randrange(0, 5)  # interior points, length <= 6
            pts = sorted(rng.sample(
                [F(k, 64) for k in range(1, 64)], n))
            return [F(0)] + pts + [F(1)]

        for _ in range(50):
            xs = rand_partition()
            ys = rand_partition()
            while len(ys) != len(xs):
                ys = rand_partition()
            f = cfp_interpolate(xs, ys)
            for x, y in zip(xs, ys):
                assert f.evaluate(x) == y
            for (t0, v0), (t1, v1) in zip(f.breakpoints, f.breakpoints[1:]):
                s = (v1 - v0) / (t1 - t0)
                assert s.numerator & (s.numerator - 1) == 0
                assert s.denominator & (s.denominator - 1) == 0

    def test_rigid_panel(self):
        xs = [F(0), F(1, 4), F(1, 2), F(1)]
        ys = [F(0), F(1, 4), F(3, 4), F(1)]
        f = cfp_interpolate(xs, ys, rigid=1)
        assert f.evaluate(F(1, 8)) == F(1, 8)
        assert f.evaluate(F(3, 16)) == F(3, 16)
        assert f.evaluate(F(1, 2)) == F(3, 4)
        with pytest.raises(ValueError):
            cfp_interpolate(xs, ys, rigid=2)  # panel does not coincide


class TestMakeMover:
    def test_moves_off_forbid_inside_window(self):
        p = F(3, 4)
        forbid = [F(25, 32), F(13, 16)]
        f = make_mover((F(1, 2), F(1)), p, forbid)
        q = f.evaluate(p)
        assert q != p and q not in forbid
        assert f.support().is_subset(I((F(1, 2), 1)))

    def test_small_window_bounds_displacement(self):
        f = make_mover((F(1, 2), F(17, 32)), F(33, 64), [])
        assert f.displacement() <= F(1, 32)

    def test_rejects_point_outside_window(self):
        with pytest.raises(ValueError):
            make_mover((F(1, 2), F(3, 4)), F(7, 8))

    def test_deterministic(self):
        a = make_mover((F(1, 2), F(1)), F(3, 4), [F(25, 32)])
        b = make_mover((F(1, 2), F(1)), F(3, 4), [F(25, 32)])
        assert a == b
