"""
Tests for bounds, difference bound matrices and federations.
"""

from fractions import Fraction

import pytest

from tioakit.errors import ClockMismatch, UnknownClock
from tioakit.zones import INF, LE_ZERO, LT_ZERO, Bound, Dbm, Federation, add, canonicalize, make_bound, pred_t, post_t

XY = ('x', 'y')


def atom(clock: str, op: str, value: int, clocks=XY) -> Federation:

    return Federation.atom(clocks, clock, op, value)


class TestBounds:
    """
    Raw encoding and the readable Bound face.
    """

    def test_encoding(self):

        assert make_bound(0) == LE_ZERO
        assert make_bound(0, True) == LT_ZERO
        assert make_bound(3) < INF

    def test_strict_is_tighter(self):

        assert Bound(3, True) < Bound(3, False)
        assert Bound(2, False) < Bound(3, True)
        assert Bound(100) < Bound.infinity()

    def test_addition(self):

        assert Bound(2, False) + Bound(3, True) == Bound(5, True)
        assert Bound(2, False) + Bound(3, False) == Bound(5, False)
        assert Bound(2) + Bound.infinity() == Bound.infinity()
        assert add(make_bound(-2), make_bound(2)) == LE_ZERO

    def test_decode_roundtrip(self):

        for bound in (Bound(0), Bound(4, True), Bound(-3, False), Bound.infinity()):

            assert Bound.decode(bound.encode()) == bound


class TestCanonicalForm:

    def test_contradiction_is_empty(self):

        m = Dbm.universe(1).m.copy()
        m[1, 0] = make_bound(5)
        m[0, 1] = make_bound(-6)

        assert canonicalize(m) is None
        assert atom('x', '<=', 5, ('x',)).intersect(atom('x', '>=', 6, ('x',))).is_empty()

    def test_implied_differences(self):

        m = Dbm.universe(2).m.copy()
        m[1, 0] = make_bound(2)
        m[2, 0] = make_bound(3)
        zone = canonicalize(m)

        assert zone.get(1, 2) == make_bound(2)
        assert zone.get(2, 1) == make_bound(3)

    def test_idempotent(self):

        m = Dbm.universe(2).m.copy()
        m[1, 0] = make_bound(4, True)
        m[1, 2] = make_bound(1)
        zone = canonicalize(m)

        assert canonicalize(zone.m) == zone

    def test_tighten_matches_closure(self):

        zone = Dbm.universe(2).tighten(1, 0, make_bound(2)).tighten(2, 0, make_bound(3))
        m = Dbm.universe(2).m.copy()
        m[1, 0] = make_bound(2)
        m[2, 0] = make_bound(3)

        assert zone == canonicalize(m)


class TestTimeOperations:

    def test_up_of_zero_keeps_clocks_equal(self):

        up = Federation.zero(XY).up()

        assert up.contains((1, 1))
        assert up.contains((Fraction(7, 2), Fraction(7, 2)))
        assert not up.contains((1, 2))

    def test_down(self):

        point = atom('x', '==', 3).intersect(atom('y', '==', 3))
        down = point.down()

        assert down.contains((0, 0))
        assert down.contains((1, 1))
        assert down.contains((3, 3))
        assert not down.contains((Fraction(7, 2), Fraction(7, 2)))
        assert not down.contains((1, 2))

    def test_up_and_down_are_idempotent(self):

        fed = atom('x', '>=', 1).intersect(atom('y', '<', 4))

        assert fed.up().up().equals(fed.up())
        assert fed.down().down().equals(fed.down())

    def test_up_strict_drops_the_start(self):

        zero = Federation.zero(('x',))

        assert not zero.up_strict().contains((0,))
        assert zero.up_strict().contains((Fraction(1, 10),))

    def test_pred_t_avoiding(self):

        good = atom('x', '==', 5, ('x',))
        bad = atom('x', '>', 2, ('x',)).intersect(atom('x', '<', 3, ('x',)))
        expected = atom('x', '>=', 3, ('x',)).intersect(atom('x', '<=', 5, ('x',)))

        assert pred_t(good, bad).equals(expected)

    def test_pred_t_without_obstacles_is_down(self):

        good = atom('x', '==', 5)

        assert pred_t(good, Federation.empty(XY)).equals(good.down())

    def test_pred_t_keeps_good_inside_bad(self):

        fed = atom('x', '<=', 3)

        assert fed.issubset(pred_t(fed, fed))

    def test_post_t_stops_at_obstacle(self):

        start = Federation.zero(('y',))
        inv = atom('y', '<=', 1, ('y',)).union(atom('y', '>=', 3, ('y',)).intersect(atom('y', '<=', 6, ('y',))))

        assert post_t(start, inv.complement()).equals(atom('y', '<=', 1, ('y',)))


class TestResets:

    def test_reset(self):

        fed = atom('x', '>=', 3).intersect(atom('x', '<=', 5)).intersect(atom('y', '==', 1))

        assert fed.reset(['x']).equals(atom('x', '==', 0).intersect(atom('y', '==', 1)))

    def test_reset_nothing(self):

        fed = atom('x', '>', 2)

        assert fed.reset([]).equals(fed)

    def test_reset_drops_difference(self):

        fed = Federation(XY, [Dbm.universe(2).tighten(1, 2, make_bound(-2))])

        assert fed.reset(['y']).equals(atom('y', '==', 0))

    def test_reset_inverse(self):

        target = atom('x', '<=', 2)

        assert target.reset_inverse(['x']).equals(Federation.universe(XY))
        assert atom('x', '>', 2).reset_inverse(['x']).is_empty()

    def test_free(self):

        fed = atom('x', '==', 1).intersect(atom('y', '==', 2))

        assert fed.free(['x']).equals(atom('y', '==', 2))


class TestSetOperations:

    def test_intersect(self):

        fed = atom('x', '>=', 4).intersect(atom('x', '<=', 6))

        assert fed.contains((5, 0))
        assert not fed.contains((3, 0))
        assert not fed.contains((7, 0))
        assert fed.describe() == 'x>=4 && x<=6'

    def test_intersect_union(self):

        fed = atom('x', '<', 2).union(atom('x', '>', 5)).intersect(atom('x', '<=', 5))

        assert fed.equals(atom('x', '<', 2))

    def test_subtract(self):

        box = atom('x', '<=', 4)

        assert box.subtract(atom('x', '>=', 5)).equals(box)
        assert box.subtract(box).is_empty()

        holed = box.subtract(atom('x', '>', 2).intersect(atom('x', '<', 3)))
        expected = atom('x', '<=', 2).union(atom('x', '>=', 3).intersect(atom('x', '<=', 4)))

        assert holed.equals(expected)
        assert holed.contains((2, 0))
        assert not holed.contains((Fraction(5, 2), 0))
        assert holed.contains((3, 0))

    def test_complement(self):

        fed = atom('x', '<', 2)

        assert fed.complement().equals(atom('x', '>=', 2))
        assert Federation.universe(XY).complement().is_empty()

    def test_relation(self):

        split = atom('x', '<', 2).union(atom('x', '>=', 2))

        assert split.relation(Federation.universe(XY)) == Federation.EQUAL
        assert atom('x', '==', 1).relation(atom('x', '<=', 3)) == Federation.SUBSET
        assert atom('x', '<=', 3).relation(atom('x', '==', 1)) == Federation.SUPERSET
        assert atom('x', '<=', 1).relation(atom('y', '<=', 1)) == Federation.INCOMPARABLE

    def test_reduce_keeps_the_set(self):

        fed = atom('x', '<=', 3).union(atom('x', '<=', 1)).union(atom('x', '==', 2))

        assert len(fed.reduce().zones) == 1
        assert fed.reduce().equals(fed)


class TestClockLists:

    def test_mismatch(self):

        with pytest.raises(ClockMismatch):

            Federation.universe(('x',)).intersect(Federation.universe(('y',)))

    def test_unknown_clock(self):

        with pytest.raises(UnknownClock):

            Federation.atom(('x',), 'y', '<', 1)

    def test_embed_and_rename(self):

        fed = atom('x', '<=', 2, ('x',))
        wide = fed.embed(XY)

        assert wide.clocks == XY
        assert wide.contains((2, 100))
        assert fed.rename({'x': 'z'}).clocks == ('z',)

    def test_contains_mapping(self):

        fed = atom('x', '<', 1).intersect(atom('y', '>', 1))

        assert fed.contains({'x': Fraction(1, 2), 'y': 2})
        assert not fed.contains({'x': 1, 'y': 2})


class TestRendering:

    def test_describe(self):

        assert Federation.universe(XY).describe() == 'true'
        assert Federation.empty(XY).describe() == 'false'
        assert Federation.zero(XY).describe() == 'x==0 && y==0'
        assert atom('x', '>', 3).describe() == 'x>3'
        assert atom('y', '<', 2).describe() == 'y<2'

    def test_describe_union_is_sorted(self):

        fed = atom('x', '>', 5).union(atom('x', '<', 2))

        assert fed.describe() == '(x<2) || (x>5)'

    def test_sample(self):

        fed = atom('x', '>', 2).intersect(atom('x', '<', 3)).intersect(atom('y', '>=', 1))
        point = fed.sample()

        assert fed.contains(point)
        assert Federation.empty(XY).sample() is None

    def test_extrapolate(self):

        fed = atom('x', '==', 15, ('x',)).extrapolate({'x': 10})

        assert fed.contains((11,))
        assert fed.contains((100,))
        assert not fed.contains((10,))
