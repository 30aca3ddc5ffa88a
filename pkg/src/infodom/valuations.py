"""Exact-rational valuations on the open-set lattice of a finite domain.

On a finite poset the Scott open sets are exactly the up-sets, so every
check here is an exhaustive scan of that lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .errors import BadWeights

ONE = Fraction(1)
ZERO = Fraction(0)


def as_fraction(v) -> Fraction:
    if isinstance(v, float):
        raise BadWeights("weights must be exact rationals, not floats")
    try:
        return Fraction(v)
    except (TypeError, ValueError) as e:
        raise BadWeights(f"not a rational: {v!r}") from e


class WeightAssignment:
    """Normalized weights on the elements of a finite domain.

    ``strict`` demands positive weight on every element above the bottom;
    the bottom itself may carry any nonnegative weight.
    """

    def __init__(self, domain, weights: dict, *, strict: bool = True):
        self.domain = domain
        bot = domain.bottom
        w = {}
        for x in domain:
            if x in weights:
                w[x] = as_fraction(weights[x])
            elif x == bot:
                w[x] = ZERO
            else:
                raise BadWeights(f"no weight for element {x!r}")
        extra = [k for k in weights if k not in domain]
        if extra:
            raise BadWeights(f"weights given for non-elements: {extra!r}")
        for x, v in w.items():
            if v < 0:
                raise BadWeights(f"negative weight at {x!r}")
            if strict and x != bot and v == 0:
                raise BadWeights(f"zero weight at non-bottom element {x!r}")
        total = sum(w.values(), ZERO)
        if total != 1:
            raise BadWeights(f"weights sum to {total}, not 1")
        self.weights = w
        self.strict = strict

    def __getitem__(self, x):
        return self.weights[x]

    def items(self):
        return self.weights.items()

    @classmethod
    def geometric(cls, domain):
        """The i-th element (enumeration order) gets 2^-i; the last takes the remainder."""
        els = list(domain)
        w = {x: Fraction(1, 2 ** (i + 1)) for i, x in enumerate(els)}
        w[els[-1]] += Fraction(1, 2 ** len(els))
        return cls(domain, w)

    @classmethod
    def uniform(cls, domain):
        n = len(domain)
        return cls(domain, {x: Fraction(1, n) for x in domain})


class Valuation:
    """A function on up-sets of a finite domain."""

    def __init__(self, domain, fn: Callable[[frozenset], Fraction], name: str = "valuation"):
        self.domain = domain
        self._fn = fn
        self.name = name
        self._memo: dict = {}

    def __call__(self, U) -> Fraction:
        U = frozenset(U)
        r = self._memo.get(U)
        if r is None:
            r = as_fraction(self._fn(U))
            self._memo[U] = r
        return r

    def point_mass(self, p) -> Fraction:
        up = frozenset(self.domain.up(p))
        return self(up) - self(up - {p})

    def point_masses(self) -> dict:
        return {p: self.point_mass(p) for p in self.domain}

    def measure(self, s) -> Fraction:
        return measure(self, s)


def weight_valuation(domain, w: WeightAssignment) -> Valuation:
    if w.domain is not domain and set(w.domain) != set(domain):
        raise BadWeights("weights belong to a different domain")
    ws = w.weights
    return Valuation(domain, lambda U: sum((ws[k] for k in U), ZERO), "weights")


def dirac_bottom(domain) -> Valuation:
    bot = domain.bottom
    return Valuation(domain, lambda U: ONE if bot in U else ZERO, "dirac")


# ring expressions ----------------------------------------------------------

class RingSet:
    def __and__(self, other):
        return Meet(self, other)

    def __or__(self, other):
        return Join(self, other)

    def __sub__(self, other):
        return Minus(self, other)

    def evaluate(self, domain) -> frozenset:
        raise NotImplementedError


@dataclass(frozen=True)
class Up(RingSet):
    members: frozenset

    def evaluate(self, domain):
        return frozenset(self.members)


@dataclass(frozen=True)
class Meet(RingSet):
    a: RingSet
    b: RingSet

    def evaluate(self, domain):
        return self.a.evaluate(domain) & self.b.evaluate(domain)


@dataclass(frozen=True)
class Join(RingSet):
    a: RingSet
    b: RingSet

    def evaluate(self, domain):
        return self.a.evaluate(domain) | self.b.evaluate(domain)


@dataclass(frozen=True)
class Minus(RingSet):
    a: RingSet
    b: RingSet

    def evaluate(self, domain):
        return self.a.evaluate(domain) - self.b.evaluate(domain)


@dataclass(frozen=True)
class Complement(RingSet):
    a: RingSet

    def evaluate(self, domain):
        return frozenset(domain) - self.a.evaluate(domain)


def upset(domain, members: Iterable) -> Up:
    m = frozenset(members)
    if not domain.is_upset(m):
        raise ValueError("set is not upward closed")
    return Up(m)


def principal(domain, x) -> Up:
    return Up(frozenset(domain.up(x)))


def measure(v: Valuation, s) -> Fraction:
    """Additive extension: sum of point masses over the denoted set."""
    members = s.evaluate(v.domain) if isinstance(s, RingSet) else frozenset(s)
    return sum((v.point_mass(p) for p in members), ZERO)


# CC-property validation -----------------------------------------------------

def validate_cc(v: Valuation, domain=None) -> dict:
    domain = domain if domain is not None else v.domain
    opens = domain.upsets()
    whole = frozenset(domain)
    empty = frozenset()
    vals = {U: v(U) for U in opens}
    axioms = vals[empty] == 0 and vals[whole] == 1
    axioms = axioms and all(ZERO <= x <= ONE for x in vals.values())
    mono = cont = cocont = nondeg = True
    for U in opens:
        for V in opens:
            if U <= V:
                mono = mono and vals[U] <= vals[V]
                # a directed pair has V as its union, a filtered pair has U as meet
                cont = cont and vals[U | V] == max(vals[U], vals[V])
                inner = domain.interior(U & V)
                cocont = cocont and vals[inner] == min(vals[U], vals[V])
                if U != V:
                    nondeg = nondeg and vals[U] < vals[V]
            if vals[U] + vals[V] != vals[U & V] + vals[U | V]:
                axioms = False
    return {"valuation_axioms": axioms and mono, "continuity": cont,
            "cocontinuity": cocont, "strong_nondegeneracy": nondeg}


def nondegeneracy_witness(v: Valuation, domain=None):
    domain = domain if domain is not None else v.domain
    opens = domain.upsets()
    for U in opens:
        for V in opens:
            if U < V and v(U) == v(V):
                return U, V
    return None
