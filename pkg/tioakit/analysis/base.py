"""
Shared pieces of the analysis engines.

StateSet stores a federation per location,
and the point helpers here turn symbolic layers into concrete traces:
we follow a single valuation, made of exact fractions,
and pick delays that move it into a target set.
"""

from __future__ import annotations

import math

from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from tioakit.zones import Federation

Point = Tuple[Fraction, ...]

LATER = 2  # Relation of two mark times that only need to stay in order


class StateSet(object):
    """
    StateSet - A set of states, as a federation per location.

    Locations that are missing hold no valuation.
    All federations share one clock list.
    """

    def __init__(self, clocks: Sequence[str], sets: Optional[Mapping[str, Federation]]=None) -> None:

        self.clocks: Tuple[str, ...] = tuple(clocks)  # Clock list of every member
        self.sets: Dict[str, Federation] = {}  # Location to valuations

        for loc, fed in (sets or {}).items():

            if not fed.is_empty():

                self.sets[loc] = fed

    def __repr__(self) -> str:

        return f"StateSet({self.describe()!r})"

    def __iter__(self) -> Iterator[str]:

        return iter(self.sets)

    def __contains__(self, location: object) -> bool:

        return location in self.sets

    def get(self, location: str) -> Federation:
        """
        Valuations held at a location, possibly empty.
        """

        return self.sets.get(location, Federation.empty(self.clocks))

    def items(self) -> Iterable[Tuple[str, Federation]]:
        """
        Non-empty (location, federation) pairs.
        """

        return self.sets.items()

    def locations(self) -> List[str]:
        """
        Locations holding at least one valuation.
        """

        return list(self.sets)

    def is_empty(self) -> bool:
        """
        Determines if no location holds a valuation.
        """

        return not self.sets

    def _combine(self, other: StateSet, func) -> StateSet:

        locs = list(dict.fromkeys(list(self.sets) + list(other.sets)))

        return StateSet(self.clocks, {l: func(self.get(l), other.get(l)) for l in locs})

    def union(self, other: StateSet) -> StateSet:
        """
        Location-wise union.
        """

        return self._combine(other, Federation.union)

    def intersect(self, other: StateSet) -> StateSet:
        """
        Location-wise intersection.
        """

        return self._combine(other, Federation.intersect)

    def subtract(self, other: StateSet) -> StateSet:
        """
        Location-wise difference.
        """

        return self._combine(other, Federation.subtract)

    def issubset(self, other: StateSet) -> bool:
        """
        Determines if every state here is also in 'other'.
        """

        return all(fed.issubset(other.get(loc)) for loc, fed in self.sets.items())

    def equals(self, other: StateSet) -> bool:
        """
        Semantic equality, location by location.
        """

        return self.issubset(other) and other.issubset(self)

    def contains(self, location: str, point: Sequence) -> bool:
        """
        Determines if the state (location, point) belongs to this set.
        """

        return self.get(location).contains(point)

    def reduce(self) -> StateSet:
        """
        Drops redundant zones everywhere.
        """

        return StateSet(self.clocks, {l: f.reduce() for l, f in self.sets.items()})

    def zone_count(self) -> int:
        """
        Number of zones over all locations.
        """

        return sum(len(f.zones) for f in self.sets.values())

    def describe(self) -> Dict[str, str]:
        """
        Renders every non-empty location as a guard string.
        """

        return {loc: fed.reduce().describe() for loc, fed in self.sets.items()}


def zero_point(clocks: Sequence[str]) -> Point:
    """
    The valuation with every clock at zero.
    """

    return tuple(Fraction(0) for _ in clocks)


def shift(point: Point, delay: Fraction) -> Point:
    """
    Lets 'delay' time units pass.
    """

    return tuple(v + delay for v in point)


def reset_point(point: Point, clocks: Sequence[str], resets: Iterable[str]) -> Point:
    """
    Sets the given clocks to zero.
    """

    resets = set(resets)

    return tuple(Fraction(0) if c in resets else v for c, v in zip(clocks, point))


def first_delay(point: Point, target: Federation, bad: Federation, grid: int=0) -> Optional[Fraction]:
    """
    Finds a delay that moves a point into 'target' without touching 'bad' before.

    The points of [0, d) must avoid 'bad', the endpoint may touch it.
    We return the earliest closed choice when there is one,
    otherwise the first multiple of '1 / grid' inside the earliest open interval.
    Intervals too short for the grid get their midpoint.

    :param point: Valuation in clock order
    :type point: Point
    :param target: Where the delay must end
    :type target: Federation
    :param bad: What the path must avoid
    :type bad: Federation
    :param grid: Denominator of open choices, 0 for midpoints only
    :type grid: int
    :return: A suitable delay, or None if there is none
    :rtype: Optional[Fraction]
    """

    # Latest moment we may still be outside 'bad':

    limit: Optional[Fraction] = None

    for zone in bad.zones:

        window = zone.delays(point)

        if window is not None and (limit is None or window[0] < limit):

            limit = window[0]

    best: Optional[Fraction] = None

    for zone in target.zones:

        window = zone.delays(point)

        if window is None:

            continue

        lo, lo_strict, hi, hi_strict = window

        if limit is not None and (hi is None or limit < hi):

            hi, hi_strict = limit, False

        if hi is not None and (hi < lo or (hi == lo and (lo_strict or hi_strict))):

            continue

        pick = lo if not lo_strict else None

        if pick is None and grid > 0:

            step = Fraction(math.floor(lo * grid) + 1, grid)

            if hi is None or step < hi or (step == hi and not hi_strict):

                pick = step

        if pick is None:

            top = lo + 1 if hi is None else min(hi, lo + 1)
            pick = (lo + top) / 2

        if best is None or pick < best:

            best = pick

    return best


def _frac(value: Fraction) -> Fraction:

    return value - math.floor(value)


def _cmp(first: Union[int, Fraction], second: Union[int, Fraction]) -> int:

    return (first > second) - (first < second)


def _fits(first: Fraction, first_slot: int, second: Fraction, second_slot: int, rel: int) -> bool:

    if rel == LATER:

        return math.floor(first) < math.floor(second) or first_slot <= second_slot

    return _cmp(first_slot, second_slot) == rel


def regrid(trace: List[Dict[str, str]], marks: Sequence[Tuple[Fraction, Point]], grid: int,
           budget: int=20000) -> List[Dict[str, str]]:
    """
    Moves the delays of a trace onto multiples of '1 / grid'.

    Each mark is an absolute time and the valuation held then,
    so the reset time of a clock is the time minus its value.
    Within a mark, the mark time and the reset times keep the integer parts
    of their distances and the order of their fractional parts,
    and no mark moves before the one preceding it.
    That keeps every valuation of the trace in its region,
    so the new trace passes the same zones.

    The lattice can be too coarse, for example when several strictly
    positive delays must fit below one time unit.
    The trace comes back unchanged then, or when the search runs out of budget.

    :param trace: Trace entries
    :type trace: List[Dict[str, str]]
    :param marks: (time, valuation) before and after every step, in order
    :type marks: Sequence[Tuple[Fraction, Point]]
    :param grid: Wanted denominator
    :type grid: int
    :param budget: Largest number of slot choices to try
    :type budget: int
    :return: Trace entries with new delays
    :rtype: List[Dict[str, str]]
    """

    delays = [Fraction(step['delay']) for step in trace if 'delay' in step]

    if all((d * grid).denominator == 1 for d in delays):

        return trace

    # Pairs that must keep their order of fractional parts,
    # LATER marks a time that may not fall behind an earlier one:

    related: Dict[Fraction, Dict[Fraction, int]] = {}

    for now, point in marks:

        group = {now} | {now - v for v in point}

        for first in group:

            for second in group:

                if first < second:

                    related.setdefault(second, {})[first] = _cmp(_frac(first), _frac(second))

        related.setdefault(now, {})

    for (before, _), (after, _) in zip(marks, marks[1:]):

        if before < after:

            related[after].setdefault(before, LATER)

    times = sorted(set(related) | {u for rel in related.values() for u in rel})
    slots: Dict[Fraction, int] = {}
    tries = 0

    def place(index: int) -> bool:

        nonlocal tries

        if index == len(times):

            return True

        here = times[index]

        for slot in range(grid):

            tries += 1

            if tries > budget:

                return False

            if all(_fits(u, slots[u], here, slot, rel) for u, rel in related.get(here, {}).items()):

                slots[here] = slot

                if place(index + 1):

                    return True

                del slots[here]

        return False

    if not place(0):

        return trace

    moved = {u: math.floor(u) + Fraction(slots[u], grid) for u in times}
    now = Fraction(0)
    out: List[Dict[str, str]] = []

    for step in trace:

        if 'delay' in step:

            d = Fraction(step['delay'])
            out.append(delay_step(moved[now + d] - moved[now]))
            now += d

        else:

            out.append(step)

    return out


def delay_step(delay: Fraction) -> Dict[str, str]:
    """
    Trace entry for a delay.
    """

    return {'delay': str(delay)}


def action_step(action: str, role: str) -> Dict[str, str]:
    """
    Trace entry for a discrete action.
    """

    return {'action': action, 'role': role}
