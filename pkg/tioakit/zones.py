"""
Difference Bound Matrices and federations.

This module is the symbolic substrate for all clock reasoning.
A Dbm is a convex set of clock valuations (a zone),
stored as a square matrix of bounds where entry (i, j)
means x_i - x_j is bounded by the value.
Index 0 is the reference clock, which is always zero.

A Federation is a finite union of zones over a shared, ordered clock list.
Federations are never minimised, so all comparisons are semantic.

Bounds are packed into integers so numpy can work on whole matrices:

    raw = (value << 1) | nonstrict

This keeps the natural ordering, as (v, <) sorts below (v, <=),
which in turn sorts below (v + 1, <).
INF is a distinguished value above every finite bound.

All objects here are immutable once built.
"""

from __future__ import annotations

import logging

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy

from tioakit.errors import ClockMismatch, UnknownClock

logger = logging.getLogger(__name__)

INF = 1 << 40  # Infinity bound, no constraint
LE_ZERO = 1  # (0, <=)
LT_ZERO = 0  # (0, <)

Number = Union[int, Fraction]


def make_bound(value: int, strict: bool=False) -> int:
    """
    Packs the given bound into the raw integer encoding.

    :param value: Integer constant of the bound
    :type value: int
    :param strict: True for '<', False for '<='
    :type strict: bool
    :return: Raw bound
    :rtype: int
    """

    return (value << 1) | (0 if strict else 1)


def add(a: int, b: int) -> int:
    """
    Adds two raw bounds, saturating at INF.

    The sum is strict if either operand is strict.

    :param a: First raw bound
    :type a: int
    :param b: Second raw bound
    :type b: int
    :return: Raw sum
    :rtype: int
    """

    if a >= INF or b >= INF:

        return INF

    return (((a >> 1) + (b >> 1)) << 1) | (a & b & 1)


def negate(raw: int) -> int:
    """
    Returns the complement of a bound, seen from the other side.

    The complement of x_i - x_j <= c is x_j - x_i < -c,
    and the complement of x_i - x_j < c is x_j - x_i <= -c.

    :param raw: Finite raw bound
    :type raw: int
    :return: Raw complement bound
    :rtype: int
    """

    return ((-(raw >> 1)) << 1) | (1 - (raw & 1))


def _madd(a, b):

    # Elementwise version of 'add()' for numpy arrays:

    total = (((a >> 1) + (b >> 1)) << 1) | (a & b & 1)

    return numpy.where((a >= INF) | (b >= INF), INF, total)


@dataclass(frozen=True, order=False)
class Bound(object):
    """
    Bound - A single upper bound on a clock difference.

    This is the readable face of the raw integer encoding used inside Dbm.

        * value - Integer constant, ignored for infinity
        * strict - True for '<', False for '<='
        * infinite - True for the bound that constrains nothing
    """

    value: int = 0
    strict: bool = False
    infinite: bool = False

    @classmethod
    def infinity(cls) -> Bound:
        """
        Returns the infinity bound.
        """

        return cls(0, True, True)

    @classmethod
    def decode(cls, raw: int) -> Bound:
        """
        Converts a raw bound into a Bound.

        :param raw: Raw bound
        :type raw: int
        :return: Decoded bound
        :rtype: Bound
        """

        if raw >= INF:

            return cls.infinity()

        return cls(int(raw) >> 1, not int(raw) & 1)

    def encode(self) -> int:
        """
        Converts ourselves into the raw integer encoding.

        :return: Raw bound
        :rtype: int
        """

        return INF if self.infinite else make_bound(self.value, self.strict)

    def __add__(self, other: Bound) -> Bound:

        return Bound.decode(add(self.encode(), other.encode()))

    def __lt__(self, other: Bound) -> bool:

        return self.encode() < other.encode()

    def __le__(self, other: Bound) -> bool:

        return self.encode() <= other.encode()


def canonicalize(matrix: numpy.ndarray) -> Optional[Dbm]:
    """
    Computes the tightest form of a bound matrix.

    We run an all-pairs shortest path closure over the bounds.
    If a negative cycle shows up on the diagonal,
    the constraints are unsatisfiable and we return None.

    :param matrix: Square matrix of raw bounds
    :type matrix: numpy.ndarray
    :return: Canonical Dbm, or None if empty
    :rtype: Optional[Dbm]
    """

    m = numpy.array(matrix, dtype=numpy.int64)

    for k in range(m.shape[0]):

        m = numpy.minimum(m, _madd(m[:, k:k + 1], m[k:k + 1, :]))

    if (numpy.diagonal(m) < LE_ZERO).any():

        return None

    return Dbm(m)


class Dbm(object):
    """
    Dbm - A canonical, non-empty zone.

    Instances are only ever built from canonical matrices,
    operations that may empty the zone return None instead of a Dbm.
    The matrix is flagged read only.
    """

    __slots__ = ('m', '_key')

    def __init__(self, m: numpy.ndarray) -> None:

        self.m = m  # Matrix of raw bounds
        self.m.flags.writeable = False
        self._key = None  # Cached hash key

    @property
    def dim(self) -> int:
        """
        Number of rows, the clock count plus the reference clock.
        """

        return self.m.shape[0]

    @classmethod
    def universe(cls, clocks: int) -> Dbm:
        """
        Creates the zone of all non-negative valuations.

        :param clocks: Number of clocks
        :type clocks: int
        :return: Universal zone
        :rtype: Dbm
        """

        m = numpy.full((clocks + 1, clocks + 1), INF, dtype=numpy.int64)
        m[0, :] = LE_ZERO
        numpy.fill_diagonal(m, LE_ZERO)

        return cls(m)

    @classmethod
    def zero(cls, clocks: int) -> Dbm:
        """
        Creates the zone holding only the zero valuation.

        :param clocks: Number of clocks
        :type clocks: int
        :return: Zero zone
        :rtype: Dbm
        """

        return cls(numpy.full((clocks + 1, clocks + 1), LE_ZERO, dtype=numpy.int64))

    def key(self) -> bytes:
        """
        Returns a hashable key identifying this matrix.
        """

        if self._key is None:

            self._key = bytes([self.dim]) + self.m.tobytes()

        return self._key

    def __eq__(self, other: object) -> bool:

        return isinstance(other, Dbm) and self.key() == other.key()

    def __hash__(self) -> int:

        return hash(self.key())

    def get(self, i: int, j: int) -> int:
        """
        Returns the raw bound at (i, j) as a python integer.
        """

        return int(self.m[i, j])

    def tighten(self, i: int, j: int, raw: int) -> Optional[Dbm]:
        """
        Adds the constraint x_i - x_j < or <= raw.

        We use the incremental closure,
        which keeps the matrix canonical in quadratic time.

        :param i: Row index
        :type i: int
        :param j: Column index
        :type j: int
        :param raw: Raw bound to impose
        :type raw: int
        :return: Tightened zone, or None if it became empty
        :rtype: Optional[Dbm]
        """

        m = self.m

        if raw >= m[i, j]:

            return self

        if add(raw, int(m[j, i])) < LE_ZERO:

            return None

        cand = _madd(_madd(m[:, i:i + 1], numpy.int64(raw)), m[j:j + 1, :])

        return Dbm(numpy.minimum(m, cand))

    def intersect(self, other: Dbm) -> Optional[Dbm]:
        """
        Intersects two zones over the same clocks.

        :param other: Zone to intersect with
        :type other: Dbm
        :return: Intersection, or None if empty
        :rtype: Optional[Dbm]
        """

        return canonicalize(numpy.minimum(self.m, other.m))

    def includes(self, other: Dbm) -> bool:
        """
        Determines if 'other' is a subset of this zone.
        """

        return bool((other.m <= self.m).all())

    def up(self) -> Dbm:
        """
        Future of this zone: all valuations reachable by delaying.
        """

        m = self.m.copy()
        m[1:, 0] = INF

        return Dbm(m)

    def up_strict(self) -> Dbm:
        """
        Strict future of this zone: valuations reachable by a positive delay.
        """

        m = self.m.copy()
        m[1:, 0] = INF
        m[0, 1:] &= ~1

        return canonicalize(m)

    def down(self) -> Dbm:
        """
        Past of this zone: valuations that reach it by delaying.
        """

        m = self.m.copy()
        m[0, 1:] = LE_ZERO

        return canonicalize(m)

    def lead_in(self) -> Dbm:
        """
        Valuations from which some positive delay stays inside this zone.

        Upper bounds turn strict, lower bounds turn non-strict.
        The result may contain points outside the zone
        that sit on a strict lower boundary.
        """

        m = self.m.copy()
        m[1:, 0] = numpy.where(m[1:, 0] >= INF, INF, m[1:, 0] & ~1)
        m[0, 1:] |= 1

        return canonicalize(m)

    def reset(self, k: int) -> Dbm:
        """
        Sets clock k to zero.

        :param k: Index of the clock to reset
        :type k: int
        :return: Image of this zone under the reset
        :rtype: Dbm
        """

        m = self.m.copy()
        m[k, :] = m[0, :]
        m[:, k] = m[:, 0]
        m[k, k] = LE_ZERO

        return Dbm(m)

    def free(self, k: int) -> Dbm:
        """
        Removes every constraint on clock k, apart from non-negativity.

        :param k: Index of the clock to free
        :type k: int
        :return: Zone with clock k unconstrained
        :rtype: Dbm
        """

        m = self.m.copy()
        m[k, :] = INF
        m[:, k] = m[:, 0]
        m[k, k] = LE_ZERO
        m[0, k] = LE_ZERO

        return Dbm(m)

    def extrapolate(self, ceilings: Sequence[int]) -> Dbm:
        """
        Applies maximum-constant extrapolation.

        Bounds above a clock's ceiling become infinite,
        lower bounds below the negated ceiling are relaxed to it.

        :param ceilings: Maximum constant per clock, reference clock excluded
        :type ceilings: Sequence[int]
        :return: Extrapolated zone
        :rtype: Dbm
        """

        ceil = numpy.array((0,) + tuple(ceilings), dtype=numpy.int64)
        upper = (ceil[:, None] << 1) | 1
        lower = numpy.broadcast_to((-ceil[None, :]) << 1, self.m.shape)
        off = ~numpy.eye(self.dim, dtype=bool)

        m = numpy.where(off & (self.m < INF) & (self.m > upper), INF, self.m)
        m = numpy.where(off & (m < lower), lower, m)

        return canonicalize(m)

    def subtract(self, other: Dbm) -> List[Dbm]:
        """
        Computes this zone minus another as a list of disjoint zones.

        We split along every facet of 'other' that is not implied here.
        Each split takes the complement of the facet,
        with its strictness flipped, and the remainder is carried on.

        :param other: Zone to remove
        :type other: Dbm
        :return: Disjoint zones covering the difference
        :rtype: List[Dbm]
        """

        if self.intersect(other) is None:

            return [self]

        out = []
        rest: Optional[Dbm] = self

        for i in range(self.dim):

            for j in range(self.dim):

                raw = other.get(i, j)

                if i == j or raw >= INF or raw >= rest.get(i, j):

                    continue

                outside = rest.tighten(j, i, negate(raw))

                if outside is not None:

                    out.append(outside)

                rest = rest.tighten(i, j, raw)

                if rest is None:

                    return out

        return out

    def contains(self, point: Sequence[Number]) -> bool:
        """
        Determines if the given valuation lies inside this zone.

        :param point: Clock values in clock order
        :type point: Sequence[Number]
        :return: True if the point satisfies every bound
        :rtype: bool
        """

        vals = (0,) + tuple(point)

        for i in range(self.dim):

            for j in range(self.dim):

                raw = self.get(i, j)

                if raw >= INF:

                    continue

                diff = vals[i] - vals[j]

                if (raw & 1 and diff > raw >> 1) or (not raw & 1 and diff >= raw >> 1):

                    return False

        return True

    def sample(self) -> Tuple[Fraction, ...]:
        """
        Picks a valuation inside this zone.

        Clocks are fixed one at a time.
        We prefer a closed lower bound, then the middle of the feasible interval.

        :return: A point of the zone
        :rtype: Tuple[Fraction, ...]
        """

        vals: List[Fraction] = [Fraction(0)]

        for i in range(1, self.dim):

            lo, lo_strict = Fraction(-1), True
            hi, hi_strict = None, True

            for j, fixed in enumerate(vals):

                up_raw = self.get(i, j)
                low_raw = self.get(j, i)

                if up_raw < INF:

                    cand = fixed + (up_raw >> 1)

                    if hi is None or cand < hi or (cand == hi and not up_raw & 1):

                        hi, hi_strict = cand, not up_raw & 1

                if low_raw < INF:

                    cand = fixed - (low_raw >> 1)

                    if cand > lo or (cand == lo and not low_raw & 1):

                        lo, lo_strict = cand, not low_raw & 1

            if not lo_strict:

                value = lo

            elif hi is None:

                value = lo + 1

            else:

                value = (lo + hi) / 2

            vals.append(value)

        return tuple(vals[1:])

    def delays(self, point: Sequence[Number]) -> Optional[Tuple[Fraction, bool, Optional[Fraction], bool]]:
        """
        Computes the delays that move the given point into this zone.

        :param point: Clock values in clock order
        :type point: Sequence[Number]
        :return: (low, low_strict, high, high_strict), high is None when unbounded,
            or None if no delay works
        """

        vals = (0,) + tuple(point)

        # Differences between clocks do not change with time:

        for i in range(1, self.dim):

            for j in range(1, self.dim):

                raw = self.get(i, j)

                if i == j or raw >= INF:

                    continue

                diff = vals[i] - vals[j]

                if (raw & 1 and diff > raw >> 1) or (not raw & 1 and diff >= raw >> 1):

                    return None

        lo, lo_strict = Fraction(0), False
        hi, hi_strict = None, False

        for i in range(1, self.dim):

            up_raw = self.get(i, 0)
            low_raw = self.get(0, i)

            if up_raw < INF:

                cand = Fraction(up_raw >> 1) - vals[i]

                if hi is None or cand < hi or (cand == hi and not up_raw & 1):

                    hi, hi_strict = cand, not up_raw & 1

            cand = Fraction(-(low_raw >> 1)) - vals[i]

            if cand > lo or (cand == lo and not low_raw & 1):

                lo, lo_strict = cand, not low_raw & 1

        if hi is not None and (hi < lo or (hi == lo and (lo_strict or hi_strict))):

            return None

        return lo, lo_strict, hi, hi_strict

    def describe(self, clocks: Sequence[str]) -> str:
        """
        Renders this zone as a guard string.

        Difference constraints are only printed
        when the clock bounds do not already imply them.

        :param clocks: Clock names in clock order
        :type clocks: Sequence[str]
        :return: Conjunction of constraints, or 'true'
        :rtype: str
        """

        parts = []

        for i in range(1, self.dim):

            name = clocks[i - 1]
            low, up = self.get(0, i), self.get(i, 0)

            if up < INF and up & 1 and low & 1 and -(low >> 1) == up >> 1:

                parts.append(f"{name}=={up >> 1}")

                continue

            if low != LE_ZERO:

                parts.append(f"{name}{'>=' if low & 1 else '>'}{-(low >> 1)}")

            if up < INF:

                parts.append(f"{name}{'<=' if up & 1 else '<'}{up >> 1}")

        for i in range(1, self.dim):

            for j in range(1, self.dim):

                raw = self.get(i, j)

                if i == j or raw >= INF or raw >= add(self.get(i, 0), self.get(0, j)):

                    continue

                parts.append(f"{clocks[i - 1]}-{clocks[j - 1]}{'<=' if raw & 1 else '<'}{raw >> 1}")

        return ' && '.join(parts) if parts else 'true'


class Federation(object):
    """
    Federation - A finite union of zones over an ordered clock list.

    The empty federation has no zones.
    Zone lists may overlap, as we never minimise them,
    so use 'relation()' or 'equals()' to compare federations.
    """

    EQUAL = 'equal'
    SUBSET = 'subset'
    SUPERSET = 'superset'
    INCOMPARABLE = 'incomparable'

    __slots__ = ('clocks', 'zones')

    def __init__(self, clocks: Sequence[str], zones: Iterable[Optional[Dbm]]=()) -> None:

        self.clocks: Tuple[str, ...] = tuple(clocks)  # Clock names, index 1 onward
        self.zones: Tuple[Dbm, ...] = tuple(z for z in zones if z is not None)  # Member zones

    def __repr__(self) -> str:

        return f"Federation({self.describe()!r} over {list(self.clocks)})"

    @classmethod
    def universe(cls, clocks: Sequence[str]) -> Federation:
        """
        Creates the federation of all non-negative valuations.
        """

        return cls(clocks, [Dbm.universe(len(clocks))])

    @classmethod
    def empty(cls, clocks: Sequence[str]) -> Federation:
        """
        Creates the empty federation.
        """

        return cls(clocks, [])

    @classmethod
    def zero(cls, clocks: Sequence[str]) -> Federation:
        """
        Creates the federation holding only the zero valuation.
        """

        return cls(clocks, [Dbm.zero(len(clocks))])

    @classmethod
    def atom(cls, clocks: Sequence[str], clock: str, op: str, value: int) -> Federation:
        """
        Creates the federation of a single clock constraint.

        :param clocks: Clock list of the federation
        :type clocks: Sequence[str]
        :param clock: Constrained clock
        :type clock: str
        :param op: One of '<', '<=', '>', '>=', '=='
        :type op: str
        :param value: Integer constant
        :type value: int
        :return: Federation of valuations satisfying the constraint
        :rtype: Federation
        :raises UnknownClock: If the clock is not in the clock list
        """

        base = cls.universe(clocks)
        k = base.index(clock)
        zone: Optional[Dbm] = base.zones[0]

        if op in ('<', '<=', '=='):

            zone = zone.tighten(k, 0, make_bound(value, op == '<'))

        if zone is not None and op in ('>', '>=', '=='):

            zone = zone.tighten(0, k, make_bound(-value, op == '>'))

        return cls(clocks, [zone])

    def index(self, clock: str) -> int:
        """
        Returns the matrix index of the given clock.

        :raises UnknownClock: If we do not know the clock
        """

        try:

            return self.clocks.index(clock) + 1

        except ValueError:

            raise UnknownClock(f"Unknown clock '{clock}', expected one of {list(self.clocks)}")

    def _check(self, other: Federation):

        if self.clocks != other.clocks:

            raise ClockMismatch(f"Clock lists differ: {list(self.clocks)} and {list(other.clocks)}")

    def _map(self, func) -> Federation:

        return Federation(self.clocks, [func(z) for z in self.zones])

    def is_empty(self) -> bool:
        """
        Determines if this federation holds no valuation.
        """

        return not self.zones

    def union(self, other: Federation) -> Federation:
        """
        Set union, the zone lists are concatenated.
        """

        self._check(other)

        return Federation(self.clocks, self.zones + other.zones)

    def intersect(self, other: Federation) -> Federation:
        """
        Set intersection, computed zone by zone.

        :param other: Federation over the same clocks
        :type other: Federation
        :return: Intersection
        :rtype: Federation
        :raises ClockMismatch: If the clock lists differ
        """

        self._check(other)

        return Federation(self.clocks, [a.intersect(b) for a in self.zones for b in other.zones])

    def subtract(self, other: Federation) -> Federation:
        """
        Set difference, splitting our zones along the facets of 'other'.

        :param other: Federation over the same clocks
        :type other: Federation
        :return: Valuations in this federation but not in 'other'
        :rtype: Federation
        :raises ClockMismatch: If the clock lists differ
        """

        self._check(other)

        out = []

        for zone in self.zones:

            pieces = [zone]

            for cut in other.zones:

                pieces = [part for piece in pieces for part in piece.subtract(cut)]

                if not pieces:

                    break

            out.extend(pieces)

        return Federation(self.clocks, out)

    def complement(self) -> Federation:
        """
        All non-negative valuations outside this federation.
        """

        return Federation.universe(self.clocks).subtract(self)

    def issubset(self, other: Federation) -> bool:
        """
        Determines if every valuation here is also in 'other'.
        """

        self._check(other)

        rest = [z for z in self.zones if not any(o.includes(z) for o in other.zones)]

        return Federation(self.clocks, rest).subtract(other).is_empty()

    def equals(self, other: Federation) -> bool:
        """
        Semantic equality.
        """

        return self.issubset(other) and other.issubset(self)

    def relation(self, other: Federation) -> str:
        """
        Compares two federations semantically.

        :param other: Federation over the same clocks
        :type other: Federation
        :return: One of EQUAL, SUBSET, SUPERSET, INCOMPARABLE
        :rtype: str
        :raises ClockMismatch: If the clock lists differ
        """

        sub = self.issubset(other)
        sup = other.issubset(self)

        if sub and sup:

            return Federation.EQUAL

        if sub:

            return Federation.SUBSET

        if sup:

            return Federation.SUPERSET

        return Federation.INCOMPARABLE

    def up(self) -> Federation:
        """
        Delay successors, zone by zone.
        """

        return self._map(Dbm.up)

    def up_strict(self) -> Federation:
        """
        Valuations reached from this federation by a positive delay.
        """

        return self._map(Dbm.up_strict)

    def down(self) -> Federation:
        """
        Delay predecessors, zone by zone.
        """

        return self._map(Dbm.down)

    def lead_in(self) -> Federation:
        """
        Valuations from which some positive delay enters one zone and stays there.
        """

        return self._map(Dbm.lead_in)

    def reset(self, clocks: Iterable[str]) -> Federation:
        """
        Image of this federation under resetting the given clocks to zero.

        :param clocks: Names of clocks to reset
        :type clocks: Iterable[str]
        :return: Reset image
        :rtype: Federation
        :raises UnknownClock: If a clock is not ours
        """

        out = self

        for k in sorted(self.index(c) for c in set(clocks)):

            out = out._map(lambda z: z.reset(k))

        return out

    def free(self, clocks: Iterable[str]) -> Federation:
        """
        Removes every constraint on the given clocks.
        """

        out = self

        for k in sorted(self.index(c) for c in set(clocks)):

            out = out._map(lambda z: z.free(k))

        return out

    def reset_inverse(self, clocks: Iterable[str]) -> Federation:
        """
        Valuations that land in this federation once the given clocks are reset.

        This is the backward image used for discrete predecessors,
        and the semantic counterpart of substituting zero for the reset clocks.

        :param clocks: Names of clocks reset by the transition
        :type clocks: Iterable[str]
        :return: {v | v[r -> 0] in self}
        :rtype: Federation
        """

        clocks = set(clocks)

        if not clocks:

            return self

        pinned = self

        for name in sorted(clocks):

            pinned = pinned.intersect(Federation.atom(self.clocks, name, '==', 0))

        return pinned.free(clocks)

    def embed(self, clocks: Sequence[str]) -> Federation:
        """
        Moves this federation to a larger clock list.

        Clocks we do not know stay unconstrained.

        :param clocks: Target clock list, a superset of ours
        :type clocks: Sequence[str]
        :return: Same set of valuations over the new clocks
        :rtype: Federation
        :raises UnknownClock: If one of our clocks is missing from the target
        """

        clocks = tuple(clocks)

        if clocks == self.clocks:

            return self

        target = Federation.universe(clocks)
        pos = [0] + [target.index(c) for c in self.clocks]
        out = []

        for zone in self.zones:

            m = target.zones[0].m.copy()
            m[numpy.ix_(pos, pos)] = zone.m
            out.append(canonicalize(m))

        return Federation(clocks, out)

    def rename(self, mapping: Mapping[str, str]) -> Federation:
        """
        Renames clocks, keeping their order.
        """

        return Federation([mapping.get(c, c) for c in self.clocks], self.zones)

    def reduce(self) -> Federation:
        """
        Drops zones that are included in another member.
        """

        kept: List[Dbm] = []

        for zone in sorted(set(self.zones), key=Dbm.key):

            if any(other.includes(zone) for other in kept):

                continue

            kept = [other for other in kept if not zone.includes(other)]
            kept.append(zone)

        return Federation(self.clocks, kept)

    def extrapolate(self, ceilings: Mapping[str, int]) -> Federation:
        """
        Maximum-constant extrapolation of every zone.

        :param ceilings: Maximum constant per clock name
        :type ceilings: Mapping[str, int]
        :return: Extrapolated federation, a superset of ours
        :rtype: Federation
        """

        ceil = [ceilings.get(c, 0) for c in self.clocks]

        return self._map(lambda z: z.extrapolate(ceil))

    def contains(self, point: Union[Sequence[Number], Mapping[str, Number]]) -> bool:
        """
        Determines if a valuation belongs to this federation.

        :param point: Clock values in clock order, or a name to value mapping
        :return: True if some zone contains the point
        :rtype: bool
        """

        if isinstance(point, Mapping):

            point = [point[c] for c in self.clocks]

        return any(z.contains(point) for z in self.zones)

    def sample(self) -> Optional[Dict[str, Fraction]]:
        """
        Picks a valuation in this federation, or None if it is empty.
        """

        if self.is_empty():

            return None

        return dict(zip(self.clocks, min(self.zones, key=Dbm.key).sample()))

    def describe(self) -> str:
        """
        Renders this federation as a guard string.
        """

        if self.is_empty():

            return 'false'

        texts = sorted({z.describe(self.clocks) for z in self.zones})

        if len(texts) == 1:

            return texts[0]

        return ' || '.join(f"({t})" for t in texts)


def _pred_convex(good: Dbm, bad: Dbm, clocks: Tuple[str, ...]) -> Federation:

    # Closed avoidance part, the classic timed games identity:

    g = Federation(clocks, [good])
    b = Federation(clocks, [bad])
    b_down = b.down()

    out = g.down().subtract(b_down).union(g.intersect(b_down).subtract(b).down())

    # Reaching 'bad' at its entry point is fine, as only [0, d) must avoid it:

    both = g.intersect(b)

    return out.union(both.subtract(b.up_strict()).down()).union(both)


def _post_convex(start: Dbm, bad: Dbm, clocks: Tuple[str, ...]) -> Federation:

    s = Federation(clocks, [start])
    b = Federation(clocks, [bad])
    b_up = b.up()

    return s.up().subtract(b_up).union(s.intersect(b_up).subtract(b).up())


def pred_t(good: Federation, bad: Federation) -> Federation:
    """
    Timed predecessor of 'good' avoiding 'bad'.

    Computes {v | exists d >= 0: v + d in good and v + d' not in bad for d' in [0, d)}.
    The interval is open on the right,
    so a point of 'good' that is also in 'bad' is kept.

    For unions we use the fact that the best delay for several convex
    obstacles is the smallest one that works for each of them.

    :param good: Target valuations
    :type good: Federation
    :param bad: Valuations to avoid on the way
    :type bad: Federation
    :return: Timed predecessors
    :rtype: Federation
    :raises ClockMismatch: If the clock lists differ
    """

    good._check(bad)

    if bad.is_empty():

        return good.down()

    out = []

    for g in good.zones:

        acc: Optional[Federation] = None

        for b in bad.zones:

            part = _pred_convex(g, b, good.clocks)
            acc = part if acc is None else acc.intersect(part)

            if acc.is_empty():

                break

        out.extend(acc.zones)

    return Federation(good.clocks, out).reduce()


def post_t(start: Federation, bad: Federation) -> Federation:
    """
    Timed successors of 'start' whose whole delay path avoids 'bad'.

    Computes {v + d | v in start, d >= 0, v + d' not in bad for d' in [0, d]}.
    With 'bad' set to the complement of an invariant,
    this is the delay closure inside the invariant
    where every intermediate point must satisfy it.

    :param start: Source valuations
    :type start: Federation
    :param bad: Valuations no point of the path may touch
    :type bad: Federation
    :return: Delay successors
    :rtype: Federation
    """

    start._check(bad)

    if bad.is_empty():

        return start.up()

    out = []

    for s in start.zones:

        acc: Optional[Federation] = None

        for b in bad.zones:

            part = _post_convex(s, b, start.clocks)
            acc = part if acc is None else acc.intersect(part)

            if acc.is_empty():

                break

        out.extend(acc.zones)

    return Federation(start.clocks, out).reduce()
