"""Interval numbers over a rational ambient segment, ordered by reverse inclusion."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from ..errors import ParseError
from ..metrics import RelaxedDistance


@dataclass(frozen=True, order=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo},{self.hi}]")

    def __str__(self):
        return f"[{self.lo},{self.hi}]"

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def leq(self, other: "Interval") -> bool:
        """Information order: ``other`` is contained in ``self``."""
        return self.lo <= other.lo and other.hi <= self.hi


_IV = re.compile(r"^\[\s*(-?[0-9]+(?:/[0-9]+)?)\s*,\s*(-?[0-9]+(?:/[0-9]+)?)\s*\]$")


def parse_interval(text: str) -> Interval:
    m = _IV.match(text.strip())
    if not m:
        raise ParseError(f"not an interval: {text!r}")
    try:
        return Interval(Fraction(m.group(1)), Fraction(m.group(2)))
    except (ValueError, ZeroDivisionError) as err:
        raise ParseError(str(err)) from None


class IntervalDomain:
    """R^I over the ambient segment [lo, hi]."""

    def __init__(self, lo=0, hi=1):
        self.lo, self.hi = Fraction(lo), Fraction(hi)
        if self.lo >= self.hi:
            raise ValueError("ambient segment must have positive length")

    @property
    def bottom(self) -> Interval:
        return Interval(self.lo, self.hi)

    def check(self, x: Interval) -> Interval:
        if not (self.lo <= x.lo and x.hi <= self.hi):
            raise ValueError(f"{x} lies outside [{self.lo},{self.hi}]")
        return x

    def way_below(self, x: Interval, y: Interval) -> bool:
        A, B = self.lo, self.hi
        a, b, c, d = x.lo, x.hi, y.lo, y.hi
        return ((a == A and b == B) or (a == c == A and b > d)
                or (b == d == B and a < c) or (a < c and b > d))


def rho_interval(x: Interval, y: Interval) -> RelaxedDistance:
    """[min, max] of |x' - y'| over x' in x and y' in y."""
    a, b, c, d = x.lo, x.hi, y.lo, y.hi
    return RelaxedDistance(max(Fraction(0), c - b, a - d), max(d - a, b - c))


def rho_bruteforce(x: Interval, y: Interval, n: int = 8) -> RelaxedDistance:
    """Grid search over endpoints-inclusive samples; exact for the extremes."""
    xs = [x.lo + x.length * Fraction(i, n) for i in range(n + 1)]
    ys = [y.lo + y.length * Fraction(i, n) for i in range(n + 1)]
    gaps = [abs(p - q) for p in xs for q in ys]
    lo = min(gaps)
    if x.hi >= y.lo and y.hi >= x.lo:
        lo = Fraction(0)
    return RelaxedDistance(lo, max(gaps))


def classical_pm(x: Interval, y: Interval) -> Fraction:
    return max(x.hi, y.hi) - min(x.lo, y.lo)


# area valuation -------------------------------------------------------------
#
# An interval [x, y] is the point (x, y) of the triangle lo <= x <= y <= hi.
# Box(a, b) is {a < x <= y < b}; a = None drops the lower constraint
# (x >= lo allowed), b = None drops the upper one (y <= hi allowed).  So
# Box(a, b) = V_{a,b}, Box(None, b) = V^A_b, Box(a, None) = V^B_a and
# Box(None, None) is the whole domain.

@dataclass(frozen=True)
class Box:
    a: Optional[Fraction]
    b: Optional[Fraction]

    def __and__(self, other: "Box") -> "Box":
        a = other.a if self.a is None else self.a if other.a is None else max(self.a, other.a)
        b = other.b if self.b is None else self.b if other.b is None else min(self.b, other.b)
        return Box(a, b)

    def contains(self, iv: Interval, lo, hi) -> bool:
        left = iv.lo >= lo if self.a is None else iv.lo > self.a
        right = iv.hi <= hi if self.b is None else iv.hi < self.b
        return left and right


def V(a, b) -> Box:
    return Box(Fraction(a), Fraction(b))


def VA(b) -> Box:
    return Box(None, Fraction(b))


def VB(a) -> Box:
    return Box(Fraction(a), None)


WHOLE = Box(None, None)


class AreaValuation:
    """Area plus edge lengths weighted eps1 (left edge), eps2 (right edge), eps at bottom, normalized."""

    def __init__(self, lo=0, hi=1, eps1=Fraction(1, 10), eps2=Fraction(1, 10), eps=Fraction(1, 10)):
        self.lo, self.hi = Fraction(lo), Fraction(hi)
        self.eps1, self.eps2, self.eps = Fraction(eps1), Fraction(eps2), Fraction(eps)
        L = self.hi - self.lo
        self.total = L * L / 2 + (self.eps1 + self.eps2) * L + self.eps

    def raw_box(self, box: Box) -> Fraction:
        lo, hi = self.lo, self.hi
        a = lo if box.a is None else max(box.a, lo)
        b = hi if box.b is None else min(box.b, hi)
        side = max(Fraction(0), b - a)
        val = side * side / 2
        if box.a is None:
            val += self.eps1 * max(Fraction(0), b - lo)
        if box.b is None:
            val += self.eps2 * max(Fraction(0), hi - a)
        if box.a is None and box.b is None:
            val += self.eps
        return val

    def raw(self, boxes: Iterable[Box]) -> Fraction:
        """Inclusion-exclusion over a finite union of boxes."""
        boxes = list(boxes)
        total = Fraction(0)
        for m in range(1, 1 << len(boxes)):
            inter = None
            for i, bx in enumerate(boxes):
                if m >> i & 1:
                    inter = bx if inter is None else inter & bx
            sign = 1 if bin(m).count("1") % 2 else -1
            total += sign * self.raw_box(inter)
        return total

    def __call__(self, *boxes: Box) -> Fraction:
        return self.raw(boxes) / self.total


def area_valuation(lo=0, hi=1, eps1=Fraction(1, 10), eps2=Fraction(1, 10), eps=Fraction(1, 10)):
    return AreaValuation(lo, hi, eps1, eps2, eps)


def interval_ops(lo=0, hi=1, **eps):
    D = IntervalDomain(lo, hi)
    return {"domain": D, "way_below": D.way_below, "rho_interval": rho_interval,
            "classical_pm": classical_pm, "area_valuation": area_valuation(lo, hi, **eps)}
