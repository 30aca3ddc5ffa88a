"""muInfo-structures on finite domains, induced distances and tolerances."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Optional

from .errors import BadSource, DeficientStructure, InternalInconsistency, TooLarge
from .posets import Poset
from .valuations import Valuation, WeightAssignment, weight_valuation

ZERO = Fraction(0)
NEG_MODES = ("none", "I", "J")


class DeficiencyWarning(UserWarning):
    pass


def normalize_mode(mode: str) -> str:
    m = {"none": "none", "I": "I", "J": "J", "J'": "J", "Jprime": "J", "J′": "J"}.get(mode)
    if m is None:
        raise ValueError(f"unknown negative-information mode {mode!r}")
    return m


@dataclass(frozen=True)
class RelaxedDistance:
    l: Fraction
    u: Fraction

    def __post_init__(self):
        if self.l > self.u:
            raise InternalInconsistency(f"lower part {self.l} exceeds upper part {self.u}")

    def contains(self, other: "RelaxedDistance") -> bool:
        return self.l <= other.l and other.u <= self.u

    @property
    def width(self) -> Fraction:
        return self.u - self.l


@dataclass
class Report:
    verdicts: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    def __getitem__(self, k):
        return self.verdicts[k]

    @property
    def ok(self) -> bool:
        return all(v is not False for v in self.verdicts.values())

    def set(self, name, value, witness=None):
        self.verdicts[name] = value
        if witness is not None:
            self.witnesses[name] = witness


def i_set(domain: Poset, x) -> frozenset:
    """Elements y with {x, y} unbounded."""
    return frozenset(y for y in domain if not domain.is_bounded((x, y)))


def j_set(domain: Poset, x) -> frozenset:
    """Elements y with x in the interior of I_y."""
    return frozenset(y for y in domain if x in domain.interior(i_set(domain, y)))


class MuInfoStructure:
    """Info(x) = elements below x; Neginfo by mode, measured by point masses."""

    def __init__(self, domain: Poset, valuation: Valuation, neg_mode: str = "none"):
        self.domain = domain
        self.valuation = valuation
        self.neg_mode = normalize_mode(neg_mode)
        if self.neg_mode == "I" and not domain.is_bounded_complete():
            warnings.warn("I-mode negative information on a domain that is not bounded complete",
                          DeficiencyWarning, stacklevel=2)
        self.mass = valuation.point_masses()
        self.info = {x: frozenset(domain.down(x)) for x in domain}
        if self.neg_mode == "none":
            self.neg = {x: frozenset() for x in domain}
        elif self.neg_mode == "I":
            self.neg = {x: i_set(domain, x) for x in domain}
        else:
            self.neg = {x: domain.interior(j_set(domain, x)) for x in domain}

    @property
    def deficient(self) -> bool:
        return self.neg_mode == "none"

    def mu(self, s: Iterable) -> Fraction:
        return sum((self.mass[p] for p in s), ZERO)

    def upper(self, x, y) -> Fraction:
        return 1 - self.mu(self.info[x] & self.info[y]) - self.mu(self.neg[x] & self.neg[y])

    def lower(self, x, y) -> Fraction:
        return self.mu(self.info[x] & self.neg[y]) + self.mu(self.info[y] & self.neg[x])

    def distance(self, x, y) -> RelaxedDistance:
        return RelaxedDistance(self.lower(x, y), self.upper(x, y))

    def quasi(self, x, y) -> Fraction:
        return self.upper(x, y) - self.upper(x, x)


def build_structure(domain: Poset, source, neg_mode: str = "none") -> MuInfoStructure:
    if isinstance(source, WeightAssignment):
        v = weight_valuation(domain, source)
    elif isinstance(source, Valuation):
        v = source
    else:
        raise BadSource(f"expected weights or a valuation, got {type(source).__name__}")
    return MuInfoStructure(domain, v, neg_mode)


def distance(s: MuInfoStructure, x, y) -> RelaxedDistance:
    return s.distance(x, y)


# generic validators over (points, order, distance) ---------------------------

def partial_metric_report(points, p: Callable, leq: Optional[Callable] = None,
                          lower: Optional[Callable] = None) -> Report:
    """Partial-metric axioms, checked over all pairs and triples of ``points``."""
    pts = list(points)
    r = Report()
    tab = {(a, b): p(a, b) for a in pts for b in pts}
    sep = small = sym = True
    sw = smw = None
    for a in pts:
        for b in pts:
            if a != b and tab[a, a] == tab[a, b] == tab[b, b] and sep:
                sep, sw = False, (a, b)
            if tab[a, a] > tab[a, b] and small:
                small, smw = False, (a, b)
            if tab[a, b] != tab[b, a]:
                sym = False
    r.set("separation", sep, sw)
    r.set("small_self_distance", small, smw)
    r.set("symmetry", sym)
    vm = tri = True
    vw = None
    for a, b, c in product(pts, repeat=3):
        if tab[a, c] > tab[a, b] + tab[b, c] - tab[b, b] and vm:
            vm, vw = False, (a, b, c)
        if tab[a, c] > tab[a, b] + tab[b, c]:
            tri = False
    r.set("vm_triangle", vm, vw)
    r.set("triangle", tri)
    if leq is not None:
        strong = True
        stw = None
        for a in pts:
            for b in pts:
                ok = tab[a, a] == tab[a, b] if leq(a, b) else tab[a, a] < tab[a, b]
                if not ok and strong:
                    strong, stw = False, (a, b)
        r.set("strong_self_distance", strong, stw)
    if lower is not None:
        r.set("l_le_u", all(lower(a, b) <= tab[a, b] for a in pts for b in pts))
    return r


def validate_partial_metric(s: MuInfoStructure) -> Report:
    d = s.domain
    return partial_metric_report(d.elements, s.upper, d.leq, s.lower)


def relaxed_open_sets(points, u: Callable, limit: int = 12):
    """All subsets U with {y : u(x,y) <= u(x,x)} inside U for each x in U."""
    pts = list(points)
    if len(pts) > limit:
        raise TooLarge(f"open-set enumeration limited to {limit} points")
    ball = []
    for x in pts:
        ux = u(x, x)
        ball.append(sum(1 << j for j, y in enumerate(pts) if u(x, y) <= ux))
    out = []
    for m in range(1 << len(pts)):
        if all(ball[i] & ~m == 0 for i in range(len(pts)) if m >> i & 1):
            out.append(frozenset(pts[i] for i in range(len(pts)) if m >> i & 1))
    return out


def upward_closed_sets(points, leq: Callable, limit: int = 12):
    pts = list(points)
    if len(pts) > limit:
        raise TooLarge(f"open-set enumeration limited to {limit} points")
    out = []
    for m in range(1 << len(pts)):
        S = [pts[i] for i in range(len(pts)) if m >> i & 1]
        if all(y in S for x in S for y in pts if leq(x, y)):
            out.append(frozenset(S))
    return out


def topology_check(s=None, *, points=None, leq=None, u=None) -> Report:
    """Scott-open => relaxed-open and relaxed-open => Scott-open (finite data)."""
    if s is not None:
        points, leq, u = s.domain.elements, s.domain.leq, s.upper
    scott = set(upward_closed_sets(points, leq))
    relaxed = set(relaxed_open_sets(points, u))
    r = Report()
    a = scott - relaxed
    b = relaxed - scott
    r.set("scott_open_is_relaxed_open", not a, min(a, key=len) if a else None)
    r.set("relaxed_open_is_scott_open", not b, min(b, key=len) if b else None)
    return r


def ball(points, u, x, eps):
    return frozenset(y for y in points if u(x, y) < eps)


def center_excluding_ball(s: MuInfoStructure):
    """A center x and radius eps = u(x,x) > 0 whose open ball misses x."""
    for x in s.domain:
        ux = s.upper(x, x)
        if ux > 0:
            B = ball(s.domain.elements, s.upper, x, ux)
            if x not in B:
                return x, ux, B
    return None


def validate_muinfo(s: MuInfoStructure, *, weak_totality: bool = False) -> Report:
    d = s.domain
    pts = list(d)
    universe = frozenset(pts)
    r = Report()
    mu = s.mu
    # valuation axioms on the ring of all subsets, via point masses
    masses_ok = all(m >= 0 for m in s.mass.values())
    r.set("valuation", mu(universe) == 1 and masses_ok)
    info_a = all((s.info[x] <= s.info[y]) == d.leq(x, y) for x in pts for y in pts)
    info_b = all(s.info[x] < s.info[y] for x in pts for y in pts if d.lt(x, y))
    r.set("info", info_a and info_b)
    neg_a = all(not (s.info[x] & s.neg[x]) for x in pts)
    neg_b = all(s.neg[x] <= s.neg[y] for x in pts for y in pts if d.leq(x, y))
    r.set("neginfo", neg_a and neg_b)
    totals = d.maximal()
    if s.deficient:
        r.set("totality", None)
    else:
        bad = [x for x in totals if s.info[x] | s.neg[x] != universe]
        r.set("totality", not bad, bad[0] if bad else None)
    if weak_totality:
        r.set("weak_totality", all(mu(universe - (s.info[x] | s.neg[x])) == 0 for x in totals))
    cont = True
    for b in pts:
        for m in pts:
            if not d.leq(b, m):
                continue
            for y in pts:
                for A, B in ((s.info, s.info), (s.info, s.neg), (s.neg, s.info), (s.neg, s.neg)):
                    if mu(A[m] & B[y]) != max(mu(A[b] & B[y]), mu(A[m] & B[y])):
                        cont = False
    r.set("continuity", cont)
    scott = True
    for U in d.upsets():
        for x in U:
            ix = mu(s.info[x])
            if any(ix - mu(s.info[x] & s.info[y]) == 0 and y not in U for y in pts):
                scott = False
    r.set("scott_open", scott)
    return r


def totals_metric(s: MuInfoStructure) -> dict:
    """l = u on maximal elements; raises DeficientStructure when totality fails."""
    if s.deficient:
        raise DeficientStructure("no negative information: the structure is deficient")
    universe = frozenset(s.domain)
    totals = s.domain.maximal()
    for x in totals:
        if s.info[x] | s.neg[x] != universe:
            raise DeficientStructure(f"total element {x!r} misses some information")
    out = {}
    for x in totals:
        for y in totals:
            d = s.distance(x, y)
            if d.l != d.u:
                raise InternalInconsistency(f"l != u on totals {x!r}, {y!r}")
            out[x, y] = d.u
    return out


# tolerances -------------------------------------------------------------------

@dataclass(frozen=True)
class Tolerance:
    relation: frozenset

    def __contains__(self, pair):
        return pair in self.relation

    def is_reflexive(self, points) -> bool:
        return all((x, x) in self.relation for x in points)

    def is_symmetric(self) -> bool:
        return all((y, x) in self.relation for x, y in self.relation)

    def is_closed(self, domain: Poset) -> bool:
        """Complement is upward closed in the product order."""
        for (x, y) in product(domain, repeat=2):
            if (x, y) in self.relation:
                continue
            for x2 in domain.up(x):
                for y2 in domain.up(y):
                    if (x2, y2) in self.relation:
                        return False
        return True


def not_sim(domain: Poset, x, y) -> bool:
    """Some v << x and w << y are unbounded; on finite domains << is <=."""
    return any(not domain.is_bounded((v, w)) for v in domain.down(x) for w in domain.down(y))


def least_closed_tolerance(domain: Poset) -> Tolerance:
    """Downward closure of the diagonal in the product order."""
    return Tolerance(frozenset((x, y) for x in domain for y in domain if domain.is_bounded((x, y))))


def epsilon_tolerance(s: MuInfoStructure, eps) -> Tolerance:
    eps = Fraction(eps)
    return Tolerance(frozenset((x, y) for x in s.domain for y in s.domain if s.lower(x, y) <= eps))
