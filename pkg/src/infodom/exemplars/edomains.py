"""The countable domains E, E' and E+g, handled symbolically.

    E  = bot, e_1 < e_2 < ... < e_inf, 0_E, and totals f_j above 0_E and e_1..e_j
    E' = E plus a compact e_star above e_inf (so e_inf is no longer total)
    Eg = E plus g_2 < g_3 < ... < g_inf above 0_E, with g_n below f_j for n <= j

Element sets are finite-plus-cofinite per family (``SetDescriptor``).  Every
predicate used here is constant on a family beyond the largest index it
mentions, so descriptors are built by probing a few indices past that point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Optional

from ..errors import InternalInconsistency, ParseError
from ..metrics import RelaxedDistance, normalize_mode
from ..posets import Poset
from ..valuations import WeightAssignment

FAMILY_START = {"e": 1, "f": 1, "g": 2}
LIMITS = ("einf", "ginf")
PROBE = 3


@dataclass(frozen=True, order=True)
class SymElement:
    tag: str
    n: int = 0

    def __str__(self):
        return f"{self.tag}{self.n}" if self.tag in FAMILY_START else self.tag

    @property
    def display(self):
        if self.tag == "zero":
            return "0_E"
        return str(self)

    @property
    def index(self):
        return self.n


BOT = SymElement("bot")
ZERO_E = SymElement("zero")
EINF = SymElement("einf")
ESTAR = SymElement("estar")
GINF = SymElement("ginf")


def e(n):
    return SymElement("e", n)


def f(n):
    return SymElement("f", n)


def g(n):
    return SymElement("g", n)


_ELEM = re.compile(r"^(?:(bot|zero|0_E|einf|estar|ginf)|([efg])([0-9]+))$")


def parse_element(text: str) -> SymElement:
    m = _ELEM.match(text.strip())
    if not m:
        raise ParseError(f"not a symbolic element: {text!r}")
    if m.group(1):
        tag = "zero" if m.group(1) == "0_E" else m.group(1)
        return SymElement(tag)
    fam, n = m.group(2), int(m.group(3))
    if n < FAMILY_START[fam]:
        raise ParseError(f"index of {text!r} below {FAMILY_START[fam]}")
    return SymElement(fam, n)


# set descriptors -------------------------------------------------------------

def _canon_family(fam, finite, tail):
    start = FAMILY_START[fam]
    finite = {i for i in finite if i >= start}
    if tail is not None:
        tail = max(tail, start)
        finite = {i for i in finite if i < tail}
        while tail - 1 in finite:
            finite.discard(tail - 1)
            tail -= 1
    return frozenset(finite), tail


class SetDescriptor:
    """Finite set of specials plus, per family, a finite index set and an optional tail."""

    __slots__ = ("specials", "families")

    def __init__(self, specials: Iterable[str] = (), families: Optional[dict] = None):
        self.specials = frozenset(specials)
        fams = {}
        for fam, (finite, tail) in (families or {}).items():
            fin, t = _canon_family(fam, finite, tail)
            if fin or t is not None:
                fams[fam] = (fin, t)
        self.families = fams

    def _key(self):
        return self.specials, tuple(sorted((k, tuple(sorted(v[0])), v[1]) for k, v in self.families.items()))

    def __eq__(self, other):
        return isinstance(other, SetDescriptor) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __contains__(self, x: SymElement):
        if x.tag not in FAMILY_START:
            return x.tag in self.specials
        fin, tail = self.families.get(x.tag, (frozenset(), None))
        return x.n in fin or (tail is not None and x.n >= tail)

    def __bool__(self):
        return bool(self.specials or self.families)

    def horizon(self) -> int:
        h = 1
        for fin, tail in self.families.values():
            h = max([h, *fin, tail or 0])
        return h

    def is_finite(self) -> bool:
        return all(t is None for _, t in self.families.values())

    def elements(self):
        """Members, for finite descriptors only."""
        if not self.is_finite():
            raise ValueError("descriptor is infinite")
        out = [SymElement(s) for s in self.specials]
        for fam, (fin, _) in self.families.items():
            out += [SymElement(fam, i) for i in fin]
        return sorted(out)

    def members_upto(self, n: int):
        out = {SymElement(s) for s in self.specials}
        for fam, (fin, tail) in self.families.items():
            for i in range(FAMILY_START[fam], n + 1):
                if i in fin or (tail is not None and i >= tail):
                    out.add(SymElement(fam, i))
        return out

    def _combine(self, other, op):
        h = max(self.horizon(), other.horizon()) + 1
        fams = {}
        for fam in set(self.families) | set(other.families):
            a = self.families.get(fam, (frozenset(), None))
            b = other.families.get(fam, (frozenset(), None))
            has = lambda p, i: i in p[0] or (p[1] is not None and i >= p[1])
            fin = {i for i in range(FAMILY_START[fam], h) if op(has(a, i), has(b, i))}
            tail = h if op(a[1] is not None, b[1] is not None) else None
            fams[fam] = (fin, tail)
        sp = {s for s in self.specials | other.specials
              if op(s in self.specials, s in other.specials)}
        return SetDescriptor(sp, fams)

    def __and__(self, other):
        return self._combine(other, lambda a, b: a and b)

    def __or__(self, other):
        return self._combine(other, lambda a, b: a or b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a and not b)

    def __le__(self, other):
        return not (self - other)

    def __repr__(self):
        parts = sorted(self.specials)
        for fam, (fin, tail) in sorted(self.families.items()):
            parts += [f"{fam}{i}" for i in sorted(fin)]
            if tail is not None:
                parts.append(f"{fam}{tail}..")
        return "{" + ", ".join(parts) + "}"

    def render(self) -> str:
        names = {"zero": "0_E"}
        parts = [names.get(s, s) for s in sorted(self.specials)]
        for fam, (fin, tail) in sorted(self.families.items()):
            parts += [f"{fam}{i}" for i in sorted(fin)]
            if tail is not None:
                parts.append(f"{fam}{tail},{fam}{tail + 1},...")
        return "{" + ", ".join(parts) + "}"


EMPTY = SetDescriptor()


# the domains ----------------------------------------------------------------

class SymDomain:
    def __init__(self, name, families, specials):
        self.name = name
        self.families = tuple(families)
        self.specials = tuple(specials)

    def __repr__(self):
        return f"SymDomain({self.name})"

    def __contains__(self, x):
        if x.tag in FAMILY_START:
            return x.tag in self.families and x.n >= FAMILY_START[x.tag]
        return x.tag in self.specials

    def check(self, x):
        if x not in self:
            raise ParseError(f"{x} is not an element of {self.name}")
        return x

    def compact(self, x) -> bool:
        return x.tag not in LIMITS

    def leq(self, x, y) -> bool:
        if x == y or x.tag == "bot":
            return True
        t, u = x.tag, y.tag
        if t == "e":
            return (u == "e" and y.n >= x.n) or (u == "f" and y.n >= x.n) or u in ("einf", "estar")
        if t == "einf":
            return u == "estar"
        if t == "zero":
            return u in ("f", "g", "ginf")
        if t == "g":
            return (u == "g" and y.n >= x.n) or (u == "f" and y.n >= x.n) or u == "ginf"
        return False

    def maximal_elements_for(self, k):
        tops = [f(max(k, 1))]
        if "estar" in self.specials:
            tops.append(ESTAR)
        else:
            tops.append(EINF)
        if "ginf" in self.specials:
            tops.append(GINF)
        return tops

    def bounded(self, x, y) -> bool:
        if self.leq(x, y) or self.leq(y, x):
            return True
        return any(self.leq(x, z) and self.leq(y, z)
                   for z in self.maximal_elements_for(max(x.n, y.n)))

    def is_total(self, x) -> bool:
        if x.tag == "f":
            return True
        if x.tag == "einf":
            return "estar" not in self.specials
        return x.tag in ("estar", "ginf")

    def elements_upto(self, n):
        out = [SymElement(s) for s in self.specials]
        for fam in self.families:
            out += [SymElement(fam, i) for i in range(FAMILY_START[fam], n + 1)]
        return sorted(out, key=_order_key)

    def compacts_upto(self, n):
        return [x for x in self.elements_upto(n) if self.compact(x)]

    def describe(self, pred: Callable[[SymElement], bool], horizon: int) -> SetDescriptor:
        """Descriptor of {y : pred(y)}, valid when pred is constant past ``horizon``."""
        sp = [s for s in self.specials if pred(SymElement(s))]
        fams = {}
        for fam in self.families:
            start = FAMILY_START[fam]
            top = max(horizon, start) + PROBE
            hits = [i for i in range(start, top + 1) if pred(SymElement(fam, i))]
            tail = None
            if top in hits:
                tail = top
                while tail - 1 in hits:
                    tail -= 1
            fams[fam] = ([i for i in hits if tail is None or i < tail], tail)
        return SetDescriptor(sp, fams)

    @property
    def universe(self):
        return self.describe(lambda y: True, 1)

    def totals(self):
        return self.describe(self.is_total, 1)


def _order_key(x):
    rank = {"bot": 0, "zero": 1, "e": 2, "g": 3, "f": 4, "einf": 5, "ginf": 6, "estar": 7}
    return (x.n, rank[x.tag])


DOMAINS = {
    "E": SymDomain("E", ("e", "f"), ("bot", "zero", "einf")),
    "Eprime": SymDomain("Eprime", ("e", "f"), ("bot", "zero", "einf", "estar")),
    "Eg": SymDomain("Eg", ("e", "f", "g"), ("bot", "zero", "einf", "ginf")),
}
ALIASES = {"E'": "Eprime", "E+g": "Eg", "Eplusg": "Eg"}


def get_domain(name) -> SymDomain:
    if isinstance(name, SymDomain):
        return name
    key = ALIASES.get(name, name)
    if key not in DOMAINS:
        raise ValueError(f"unknown exemplar domain {name!r}")
    return DOMAINS[key]


# neighborhoods ---------------------------------------------------------------

@lru_cache(maxsize=None)
def up(name, x) -> SetDescriptor:
    D = get_domain(name)
    return D.describe(lambda y: D.leq(x, y), x.n)


@lru_cache(maxsize=None)
def down(name, x) -> SetDescriptor:
    D = get_domain(name)
    return D.describe(lambda y: D.leq(y, x), x.n)


def interior(name, S: SetDescriptor) -> SetDescriptor:
    """Scott interior: compacts whose up-set is inside S, limits approximated from inside."""
    D = get_domain(name)
    deep = S.horizon() + 1

    def inside(z):
        if D.compact(z):
            return up(name, z) <= S
        fam = z.tag[0]
        return up(name, SymElement(fam, max(deep, FAMILY_START[fam]))) <= S

    return D.describe(inside, S.horizon())


def is_open(name, S) -> bool:
    return interior(name, S) == S


@lru_cache(maxsize=None)
def i_set(name, x) -> SetDescriptor:
    D = get_domain(name)
    return D.describe(lambda y: not D.bounded(x, y), x.n)


@lru_cache(maxsize=None)
def int_i(name, y) -> SetDescriptor:
    return interior(name, i_set(name, y))


@lru_cache(maxsize=None)
def j_set(name, x) -> SetDescriptor:
    D = get_domain(name)
    return D.describe(lambda y: x in int_i(name, y), x.n + 1)


@lru_cache(maxsize=None)
def jprime_set(name, x) -> SetDescriptor:
    return interior(name, j_set(name, x))


def neighborhoods(name, x: SymElement) -> dict:
    D = get_domain(name)
    D.check(x)
    C = down(name, x)
    K = D.describe(lambda y: D.compact(y) and D.leq(y, x), x.n)
    return {"K": K, "C": C, "I": i_set(name, x), "J": j_set(name, x), "Jprime": jprime_set(name, x)}


def neg_set(name, x, mode) -> SetDescriptor:
    mode = normalize_mode(mode)
    if mode == "none":
        return EMPTY
    return i_set(name, x) if mode == "I" else jprime_set(name, x)


def chain_union(name, which, fam="e"):
    """Union of the family's neighborhoods X(fam_i) over all i (its lub is the limit)."""
    D = get_domain(name)
    start = FAMILY_START[fam]
    fn = {"C": down, "I": i_set, "J": j_set, "Jprime": jprime_set}[which]
    return D.describe(lambda z: z in fn(name, SymElement(fam, max(z.n, start) + PROBE)), PROBE)


# weights ---------------------------------------------------------------------

@dataclass(frozen=True)
class WeightScheme:
    """w(bot), w(0_E) and c * 2^-k for the k-th compact (k >= 3) in the enumeration."""

    name: str
    bot: Fraction
    zero: Fraction
    coeff: Fraction

    def layout(self, D):
        # family -> (explicit positions below i0, slope p, offset q, i0)
        if "g" in D.families:
            return {"e": ({1: 3}, 3, -1, 2), "f": ({1: 4}, 3, 0, 2), "g": ({}, 3, 1, 2)}
        return {"e": ({}, 2, 1, 1), "f": ({}, 2, 2, 1)}

    def position(self, D, x) -> Optional[int]:
        if x.tag == "bot":
            return 1
        if x.tag == "zero":
            return 2
        if x.tag not in FAMILY_START:
            return None
        explicit, p, q, i0 = self.layout(D)[x.tag]
        return explicit[x.n] if x.n < i0 else p * x.n + q

    def weight_at(self, k: int) -> Fraction:
        if k == 1:
            return self.bot
        if k == 2:
            return self.zero
        return self.coeff / 2 ** k

    def weight(self, D, x) -> Fraction:
        k = self.position(D, x)
        return Fraction(0) if k is None else self.weight_at(k)

    def family_tail(self, D, fam, t) -> Fraction:
        explicit, p, q, i0 = self.layout(D)[fam]
        total = sum((self.weight_at(explicit[i]) for i in range(t, i0)), Fraction(0))
        t = max(t, i0)
        return total + self.coeff * Fraction(1, 2) ** (p * t + q) / (1 - Fraction(1, 2 ** p))

    def measure(self, D, S: SetDescriptor) -> Fraction:
        total = sum((self.weight(D, SymElement(s)) for s in S.specials), Fraction(0))
        for fam, (fin, tail) in S.families.items():
            total += sum((self.weight(D, SymElement(fam, i)) for i in fin), Fraction(0))
            if tail is not None:
                total += self.family_tail(D, fam, tail)
        return total

    def enumeration(self, D, K):
        """Weighted compacts at positions 1..K, in order."""
        out = {1: BOT, 2: ZERO_E}
        for fam in D.families:
            i = FAMILY_START[fam]
            while (k := self.position(D, SymElement(fam, i))) <= K:
                out[k] = SymElement(fam, i)
                i += 1
        return [out[k] for k in range(1, K + 1)]

    def tail_after(self, K: int) -> Fraction:
        return 1 - sum((self.weight_at(k) for k in range(1, K + 1)), Fraction(0))


SCHEMES = {
    "default": WeightScheme("default", Fraction(0), Fraction(1, 4), Fraction(3)),
    "plain": WeightScheme("plain", Fraction(1, 2), Fraction(1, 4), Fraction(1)),
}


def get_scheme(scheme) -> WeightScheme:
    if isinstance(scheme, WeightScheme):
        return scheme
    if scheme not in SCHEMES:
        raise ValueError(f"unknown weight scheme {scheme!r}")
    return SCHEMES[scheme]


# distances -------------------------------------------------------------------

def sym_measure(name, S, scheme="default"):
    return get_scheme(scheme).measure(get_domain(name), S)


def sym_distance(name, weights_scheme="default", neg_mode="J", x=None, y=None) -> RelaxedDistance:
    D = get_domain(name)
    W = get_scheme(weights_scheme)
    D.check(x)
    D.check(y)
    Cx, Cy = down(name, x), down(name, y)
    Nx, Ny = neg_set(name, x, neg_mode), neg_set(name, y, neg_mode)
    u = 1 - W.measure(D, Cx & Cy) - W.measure(D, Nx & Ny)
    l = W.measure(D, Cx & Ny) + W.measure(D, Cy & Nx)
    return RelaxedDistance(l, u)


def anytime_distance(name, x, y, steps, neg_mode="J", weights_scheme="default"):
    """Brackets after 0..steps enumerated compacts; immutable tuple per call."""
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    D = get_domain(name)
    W = get_scheme(weights_scheme)
    D.check(x)
    D.check(y)
    Cx, Cy = down(name, x), down(name, y)
    Nx, Ny = neg_set(name, x, neg_mode), neg_set(name, y, neg_mode)
    l, u = Fraction(0), Fraction(1)
    out = [RelaxedDistance(l, u)]
    for k in W.enumeration(D, steps):
        w = W.weight(D, k)
        if (k in Cx and k in Cy) or (k in Nx and k in Ny):
            u -= w
        if (k in Cx and k in Ny) or (k in Cy and k in Nx):
            l += w
        out.append(RelaxedDistance(l, u))
    return tuple(out)


# tolerances, Lawson condition, continuity ------------------------------------

def _deep_compact(x, depth):
    if x.tag == "einf":
        return e(depth)
    if x.tag == "ginf":
        return g(depth)
    return x


def not_sim(name, x, y) -> bool:
    """Some compacts below x and y are unbounded (the largest probes suffice)."""
    D = get_domain(name)
    depth = max(x.n, y.n, 1) + PROBE
    return not D.bounded(_deep_compact(x, depth), _deep_compact(y, depth))


@dataclass
class LawsonReport:
    holds: bool
    witness: Optional[SymElement] = None
    total: Optional[SymElement] = None
    indistinguishable: tuple = ()

    def line(self):
        s = f"lawson: {'true' if self.holds else 'false'}"
        if self.witness is not None:
            s += f"  witness: {self.witness.display}"
        return s


def lawson_check(name, depth=6) -> LawsonReport:
    """I_y and Int(I_y) agree on totals, checked on all elements up to ``depth``.

    The equivalent form J_x = I_x for totals x is computed as well; the two
    must agree.
    """
    D = get_domain(name)
    T = D.totals()
    witness = total = None
    for y in D.elements_upto(depth):
        gap = (i_set(name, y) - int_i(name, y)) & T
        if gap:
            witness = y
            total = sorted(gap.members_upto(depth + PROBE), key=_order_key)[0]
            break
    totals = [x for x in D.elements_upto(depth) if D.is_total(x)]
    by_j = all(j_set(name, x) == i_set(name, x) for x in totals)
    if by_j != (witness is None):
        raise InternalInconsistency("the two forms of the Lawson condition disagree")
    indist = tuple((a, b) for i, a in enumerate(totals) for b in totals[i + 1:]
                   if not not_sim(name, a, b))
    return LawsonReport(witness is None, witness, total, indist)


def continuity_report(name, neg_mode="I", weights_scheme="default", depth=4, fam="e"):
    """Axiom-group-5 instances for the chain fam_1 < fam_2 < ... and sampled y.

    Returns a list of (y, pair, value at the lub, sup along the chain) for
    the failing instances; empty means every sampled instance holds.
    """
    D = get_domain(name)
    W = get_scheme(weights_scheme)
    mode = normalize_mode(neg_mode)
    lub = EINF if fam == "e" else GINF
    which = {"none": None, "I": "I", "J": "Jprime"}[mode]
    sets = {"Info": (down(name, lub), chain_union(name, "C", fam))}
    if which:
        sets["Neginfo"] = (neg_set(name, lub, mode), chain_union(name, which, fam))
    bad = []
    for y in D.elements_upto(depth):
        ys = {"Info": down(name, y), "Neginfo": neg_set(name, y, mode)}
        for a, (at_lub, along) in sets.items():
            for b, Y in ys.items():
                lhs, rhs = W.measure(D, at_lub & Y), W.measure(D, along & Y)
                if lhs != rhs:
                    bad.append((y, (a, b), lhs, rhs))
    return bad


def cauchy_witness(name="Eprime", n=8, neg_mode="J", weights_scheme="default"):
    """Distances d(f_j, f_{j+1}) and d(f_j, e_star) for j = 1..n."""
    rows = []
    for j in range(1, n + 1):
        step = sym_distance(name, weights_scheme, neg_mode, f(j), f(j + 1))
        away = sym_distance(name, weights_scheme, neg_mode, f(j), ESTAR)
        rows.append((j, step.u, away.u))
    return rows


# finite truncations ----------------------------------------------------------

def truncation(name, n, *, limits=False, weights_scheme="default"):
    """(poset, weights, tail) for the elements of index <= n.

    Weights are the scheme's, restricted, with the missing tail mass put on
    the bottom.  ``limits`` adds the limit points (with weight 0).
    """
    D = get_domain(name)
    W = get_scheme(weights_scheme)
    els = [x for x in D.elements_upto(n) if limits or D.compact(x)]
    P = Poset(els, D.leq, check=False)
    w = {x: W.weight(D, x) for x in els}
    tail = 1 - sum(w.values(), Fraction(0))
    w[BOT] += tail
    return P, WeightAssignment(P, w, strict=False), tail
