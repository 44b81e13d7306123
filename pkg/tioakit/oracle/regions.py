"""
Clock regions over exact rationals.

A region is identified by a key made of two tuples:
the integer part of every clock and the rank of its fractional part.
Rank 0 means the fraction is zero, ranks 1..k order the distinct non-zero fractions.
A clock above its ceiling gets the integer 'ceiling + 1' and the rank -1,
its fraction no longer matters.

Every region has a canonical representative, and every operation
here works on representatives, so the rest of the oracle only ever
deals with a finite set of points.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, List, Sequence, Tuple

from tioakit.analysis.base import Point

RegionKey = Tuple[Tuple[int, ...], Tuple[int, ...]]

ABOVE = -1


def region_key(point: Sequence[Fraction], ceilings: Sequence[int]) -> RegionKey:
    """
    Computes the region of a valuation.

    :param point: Valuation, one value per clock
    :type point: Sequence[Fraction]
    :param ceilings: Largest relevant constant per clock
    :type ceilings: Sequence[int]
    :return: Region key
    :rtype: RegionKey
    """

    ints: List[int] = []
    fracs: List[Fraction] = []

    for value, ceil in zip(point, ceilings):

        value = Fraction(value)

        if value > ceil:

            ints.append(ceil + 1)
            fracs.append(None)

        else:

            whole = value.numerator // value.denominator
            ints.append(whole)
            fracs.append(value - whole)

    order = sorted({f for f in fracs if f})
    ranks = tuple(ABOVE if f is None else (order.index(f) + 1 if f else 0) for f in fracs)

    return tuple(ints), ranks


def representative(key: RegionKey) -> Point:
    """
    The canonical point of a region.

    Fractions are spread evenly over (0, 1) following their ranks,
    clocks above their ceiling sit at 'ceiling + 1'.

    :param key: Region key
    :type key: RegionKey
    :return: A valuation inside the region
    :rtype: Point
    """

    ints, ranks = key
    slots = max(list(ranks) + [0]) + 1

    return tuple(Fraction(i) if r == ABOVE else Fraction(i) + Fraction(r, slots) for i, r in zip(ints, ranks))


def canonical(point: Sequence[Fraction], ceilings: Sequence[int]) -> Point:
    """
    Moves a valuation to the representative of its region.
    """

    return representative(region_key(point, ceilings))


def successor_delay(point: Point, ceilings: Sequence[int]) -> Fraction:
    """
    A delay that moves a representative into the next region.

    If some bounded clock has a zero fraction we leave the integer
    by half the distance to the next crossing,
    otherwise we wait until the largest fraction reaches an integer.
    Returns zero when every clock is above its ceiling,
    the region is then its own successor.

    :param point: Representative of the current region
    :type point: Point
    :param ceilings: Largest relevant constant per clock
    :type ceilings: Sequence[int]
    :return: Delay to the time successor
    :rtype: Fraction
    """

    fracs = [v - (v.numerator // v.denominator) for v, c in zip(point, ceilings) if v <= c]

    if not fracs:

        return Fraction(0)

    gaps = [1 - f for f in fracs if f]

    if any(f == 0 for f in fracs):

        return min(gaps) / 2 if gaps else Fraction(1, 2)

    return min(gaps)


def time_successor(point: Point, ceilings: Sequence[int]) -> Point:
    """
    Representative of the immediate time successor region.
    """

    delay = successor_delay(point, ceilings)

    return canonical(tuple(v + delay for v in point), ceilings)


def all_keys(ceilings: Sequence[int]) -> Iterator[RegionKey]:
    """
    Enumerates every region over the given ceilings.

    :param ceilings: Largest relevant constant per clock
    :type ceilings: Sequence[int]
    :return: Region keys, each exactly once
    :rtype: Iterator[RegionKey]
    """

    dims = len(ceilings)

    def ints(pos: int) -> Iterator[Tuple[int, ...]]:

        if pos == dims:

            yield ()
            return

        for value in range(ceilings[pos] + 2):

            for rest in ints(pos + 1):

                yield (value,) + rest

    def ranks(bounded: List[int]) -> Iterator[Tuple[int, ...]]:

        # Ordered set partitions of the bounded clocks, with a zero class in front:

        if not bounded:

            yield ()
            return

        rest = bounded[1:]

        for tail in ranks(rest):

            used = max(list(tail) + [0])

            # Join an existing class, or open a new one at any position:

            for rank in range(0, used + 1):

                yield (rank,) + tail

            for rank in range(1, used + 2):

                yield (rank,) + tuple(r + 1 if r >= rank else r for r in tail)

    for whole in ints(0):

        bounded = [k for k in range(dims) if whole[k] <= ceilings[k]]

        for part in ranks(bounded):

            full = [ABOVE] * dims

            for k, rank in zip(bounded, part):

                full[k] = rank

            # A clock sitting on its ceiling with a non-zero fraction is above it:

            if any(whole[k] == ceilings[k] and full[k] > 0 for k in bounded):

                continue

            yield whole, tuple(full)
