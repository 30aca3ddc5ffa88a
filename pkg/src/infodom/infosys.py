"""Algebraic information systems, their theories, and the induced finite domains.

A system is stored as a closure operator on token bitmasks: ``u |- v`` holds
exactly when ``v`` lies inside the closure of ``u``, and any set whose
closure meets the false token closes to every token.  Finite systems built
from generator rules materialize that closure lazily and memoize it.
"""

from dataclasses import dataclass
from itertools import combinations

from ._bits import bits, mask_key, submasks
from .errors import (AxiomViolation, Degenerate, Inconsistent, NoCompactTop,
                     NotBoundedComplete, TooLarge, TopIsBottom)
from .posets import Poset

DEFAULT_BOUND = 12
MAX_ELEMENTS = 200_000


def label_key(t):
    """Sort key giving a stable order on heterogeneous token labels."""
    if isinstance(t, (int, str)):
        return (0, str(type(t).__name__), t if isinstance(t, int) else 0, str(t))
    return (1, repr(t))


def sort_labels(labels):
    return sorted(labels, key=label_key)


class InfoSystem:
    """Tokens, a false token ``nabla`` and an entailment given by a closure.

    ``closure`` maps a token mask to a mask containing it.  It does not need
    to handle the false token itself: any result containing ``nabla`` is
    widened to the full token set here.
    """

    kind = "algebraic"

    def __init__(self, tokens, nabla, closure, *, basis=None, bound=DEFAULT_BOUND, rules=None):
        self._tokens = tuple(tokens)
        if len(set(self._tokens)) != len(self._tokens):
            raise ValueError("token ids must be distinct")
        if nabla not in self._tokens:
            raise ValueError(f"false token {nabla!r} is not among the tokens")
        self._nabla = nabla
        self._index = {t: i for i, t in enumerate(self._tokens)}
        self._nb = self._index[nabla]
        self._full = (1 << len(self._tokens)) - 1
        self._raw = closure
        self._memo = {}
        self._basis = basis
        self._bound = bound
        self._rules = rules
        self._elements = None
        self._key = None
        self._top_sys = None

    # tokens and masks
    @property
    def tokens(self):
        return self._tokens

    @property
    def nabla(self):
        return self._nabla

    @property
    def nabla_bit(self):
        return self._nb

    @property
    def full(self):
        return self._full

    @property
    def rules(self):
        return self._rules

    def __len__(self):
        return len(self._tokens)

    def __repr__(self):
        return f"InfoSystem({len(self)} tokens, nabla={self._nabla!r})"

    def mask(self, labels):
        m = 0
        for t in labels:
            try:
                m |= 1 << self._index[t]
            except KeyError:
                raise ValueError(f"unknown token {t!r}") from None
        return m

    def labels(self, m):
        return frozenset(self._tokens[i] for i in bits(m))

    def index(self, t):
        return self._index[t]

    # entailment
    def closure_mask(self, m):
        r = self._memo.get(m)
        if r is None:
            if m >> self._nb & 1:
                r = self._full
            else:
                r = self._raw(m) | m
                if r >> self._nb & 1:
                    r = self._full
            self._memo[m] = r
        return r

    def consistent_mask(self, m):
        return not self.closure_mask(m) >> self._nb & 1

    def entails(self, u, v):
        return self.mask(v) & ~self.closure_mask(self.mask(u)) == 0

    def is_consistent(self, u):
        return self.consistent_mask(self.mask(u))

    def deductive_closure(self, x):
        """Least theory containing ``x``; raises ``Inconsistent`` otherwise."""
        m = self.closure_mask(self.mask(x))
        if m >> self._nb & 1:
            raise Inconsistent(f"{sorted(map(str, x))} entails the false token")
        return self.labels(m)

    def is_element_mask(self, m):
        return not m >> self._nb & 1 and self.closure_mask(m) == m

    def is_element(self, x):
        try:
            return self.is_element_mask(self.mask(x))
        except ValueError:
            return False

    # elements
    def element_masks(self):
        """All theories as masks, sorted by (size, positions)."""
        if self._elements is None:
            if self._bound is not None and len(self) > self._bound:
                raise TooLarge(f"{len(self)} tokens exceed the bound {self._bound}")
            start = self.closure_mask(0)
            if start >> self._nb & 1:
                raise Degenerate("the empty set entails the false token")
            basis = self._basis
            if basis is None:
                basis = [1 << i for i in range(len(self)) if i != self._nb]
            seen = {start}
            todo = [start]
            while todo:
                x = todo.pop()
                for b in basis:
                    if b & ~x:
                        y = self.closure_mask(x | b)
                        if not y >> self._nb & 1 and y not in seen:
                            seen.add(y)
                            todo.append(y)
                            if len(seen) > MAX_ELEMENTS:
                                raise TooLarge("too many elements to enumerate")
            self._elements = tuple(sorted(seen, key=mask_key))
        return self._elements

    def elements(self):
        return [self.labels(m) for m in self.element_masks()]

    def domain(self):
        """The element poset ordered by inclusion."""
        return Poset(self.elements(), lambda a, b: a <= b, check=False)

    @property
    def bottom(self):
        return self.labels(self.closure_mask(0))

    def top_mask(self):
        els = self.element_masks()
        big = els[-1]
        return big if all(e & ~big == 0 for e in els) else None

    # relation views for small systems
    def pairs(self):
        if len(self) > 8:
            raise TooLarge("pair relation materialized only up to 8 tokens")
        for u in range(self._full + 1):
            c = self.closure_mask(u)
            for v in submasks(c):
                yield self.labels(u), self.labels(v)

    def junk_tokens(self):
        return [t for i, t in enumerate(self._tokens)
                if i != self._nb and not self.consistent_mask(1 << i)]

    def axiom_report(self):
        """Literal check of the four system axioms over the full pair relation."""
        n = len(self)
        if n > 8:
            raise TooLarge("axiom check is exhaustive and limited to 8 tokens")
        size = 1 << n
        rel = []
        for u in range(size):
            c = self.closure_mask(u)
            acc = 0
            for v in submasks(c):
                acc |= 1 << v
            rel.append(acc)
        nondeg = not rel[0] >> (1 << self._nb) & 1
        refl = all(rel[u] >> v & 1 for u in range(size) for v in submasks(u))
        trans = True
        for u in range(size):
            ent = list(bits(rel[u]))
            union = 0
            for v in ent:
                union |= v
                if rel[v] & ~rel[u]:
                    trans = False
            if not rel[u] >> union & 1:
                trans = False
            if not trans:
                break
        nab = rel[1 << self._nb] == (1 << size) - 1
        return {"non_degeneracy": nondeg, "reflexivity": refl,
                "transitivity": trans, "nabla_entails_all": nab}

    # structural identity
    def _struct_key(self):
        if self._key is None:
            if len(self) > 16:
                self._key = ("id", id(self))
            else:
                self._key = (frozenset(self._tokens), self._nabla,
                             frozenset((self.labels(m), self.labels(self.closure_mask(m)))
                                       for m in range(self._full + 1)
                                       if not m >> self._nb & 1))
        return self._key

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, InfoSystem) or other.kind != self.kind:
            return NotImplemented
        if set(self._tokens) != set(other._tokens) or self._nabla != other._nabla:
            return False
        return self._struct_key() == other._struct_key()

    def __hash__(self):
        return hash((frozenset(self._tokens), self._nabla))

    # top element plumbing
    def add_top(self):
        """The system with a fresh false token, whose old false token names the new top."""
        if self._top_sys is None:
            self._top_sys = _add_top(self)
        return self._top_sys

    def remove_compact_top(self):
        top = self.top_mask()
        if top is None:
            raise NoCompactTop("the domain has no top element")
        if top == self.closure_mask(0):
            raise TopIsBottom("removing the top would leave no elements")
        full = self._full

        def cl(m):
            c = self.closure_mask(m)
            return full if top & ~c == 0 else c

        return InfoSystem(self._tokens, self._nabla, cl, bound=self._bound)


class TopExtension(InfoSystem):
    """A_top: same tokens plus a new false token; the old false token is ordinary."""

    def __init__(self, base, new_nabla):
        self.base = base
        base_full = base.full

        def cl(m):
            return base.closure_mask(m & base_full)

        super().__init__(base.tokens + (new_nabla,), new_nabla, cl,
                         bound=None if base._bound is None else base._bound + 1)

    def top_element_mask(self):
        return self.base.full


def _fresh_label(base, existing):
    if isinstance(base, str):
        cand = f"{base}_top"
        while cand in existing:
            cand += "_"
        return cand
    cand = ("top", base)
    while cand in existing:
        cand = ("top", cand)
    return cand


def _add_top(sys):
    return TopExtension(sys, _fresh_label(sys.nabla, set(sys.tokens)))


def add_top(sys):
    return sys.add_top()


def remove_compact_top(sys):
    return sys.remove_compact_top()


# rule-based construction ---------------------------------------------------

def chain_closure(rules, base=None, nabla_bit=None, full=None):
    """Forward chaining of ``(premise, conclusion)`` mask rules over a base closure."""
    rules = tuple(rules)

    def cl(m):
        while True:
            m2 = base(m) if base is not None else m
            for lhs, rhs in rules:
                if lhs & ~m2 == 0:
                    m2 |= rhs
            if nabla_bit is not None and m2 >> nabla_bit & 1:
                return full
            if m2 == m:
                return m
            m = m2

    return cl


def saturate(tokens, nabla, generators, *, bound=DEFAULT_BOUND):
    """Least entailment relation containing ``generators`` (pairs of token sets)."""
    tokens = list(tokens)
    if nabla not in tokens:
        raise ValueError("nabla must be one of the tokens")
    index = {t: i for i, t in enumerate(tokens)}
    rules = []
    for lhs, rhs in generators:
        try:
            l = sum(1 << index[t] for t in set(lhs))
            r = sum(1 << index[t] for t in set(rhs))
        except KeyError as e:
            raise ValueError(f"generator mentions unknown token {e.args[0]!r}") from None
        rules.append((l, r))
    nb = index[nabla]
    full = (1 << len(tokens)) - 1
    sys = InfoSystem(tokens, nabla, chain_closure(rules, None, nb, full), bound=bound,
                     rules=[(frozenset(l), frozenset(r)) for l, r in generators])
    if not sys.consistent_mask(0):
        raise Degenerate("the empty set entails the false token after saturation")
    return sys


def minimal_system(tokens, nabla, *, bound=DEFAULT_BOUND):
    """u |- v iff v is a subset of u, or u contains the false token."""
    return saturate(tokens, nabla, [], bound=bound)


def powerset_system(atoms, nabla="nabla"):
    return minimal_system(list(atoms) + [nabla], nabla)


def with_rules(base, rules, *, basis=None):
    """A^R for mask rules R over ``base``: closure under R together with |-_base."""
    sys = InfoSystem(base.tokens, base.nabla,
                     chain_closure(rules, base.closure_mask, base.nabla_bit, base.full),
                     basis=basis if basis is not None else base._basis, bound=base._bound)
    if not sys.consistent_mask(0):
        raise Degenerate("no theory is closed under the rules")
    return sys


def enumerate_elements(sys):
    return sys.domain()


def deductive_closure(sys, x):
    return sys.deductive_closure(x)


# representation theorem ----------------------------------------------------

def from_poset(p, nabla="nabla"):
    """Tokens are the poset elements plus a false token; u |- v iff v lies below lub u."""
    if p.bottom is None:
        raise NotBoundedComplete("the poset has no least element")
    bad = p.bounded_complete_witness()
    if bad is not None:
        raise NotBoundedComplete(f"bounded pair {bad!r} has no least upper bound")
    while nabla in p:
        nabla = nabla + "_"
    elems = list(p.elements)
    tokens = elems + [nabla]
    n = len(tokens)
    full = (1 << n) - 1
    down = {}
    for i, x in enumerate(elems):
        down[x] = sum(1 << j for j, y in enumerate(elems) if p.leq(y, x))

    def cl(m):
        s = [elems[i] for i in bits(m)]
        z = p.lub(s)
        return full if z is None else down[z]

    return InfoSystem(tokens, nabla, cl, bound=max(DEFAULT_BOUND, n))


def poset_isomorphism(p, sys):
    """The map x -> K_x from ``p`` onto the elements of ``from_poset(p)``."""
    return {x: frozenset(y for y in p if p.leq(y, x)) for x in p}


# classical systems ---------------------------------------------------------

@dataclass(frozen=True)
class ClassicalInfoSystem:
    tokens: frozenset
    con: frozenset
    entails: frozenset

    def validate(self):
        """Raise ``AxiomViolation`` with the index of the first failing condition."""
        con, ent = self.con, self.entails
        if frozenset() not in con:
            raise AxiomViolation(1, "empty set not consistent")
        for d in self.tokens:
            if frozenset([d]) not in con:
                raise AxiomViolation(2, f"{d!r} alone is inconsistent")
        for u in con:
            for k in range(len(u)):
                for sub in combinations(u, k):
                    if frozenset(sub) not in con:
                        raise AxiomViolation(3, "consistency not downward closed")
        for u in con:
            for d in u:
                if (u, d) not in ent:
                    raise AxiomViolation(4, "reflexivity fails")
        for u, d in ent:
            if u not in con or d not in self.tokens:
                raise AxiomViolation(5, "entailment outside Con x D")
            if u | {d} not in con:
                raise AxiomViolation(5, "entailment breaks consistency")
        derived = {}
        for u, d in ent:
            derived.setdefault(u, set()).add(d)
        for u in con:
            du = derived.get(u, set())
            for v in con:
                if v <= du:
                    for d in derived.get(v, ()):
                        if d not in du:
                            raise AxiomViolation(6, "transitivity fails")
        return True

    def elements(self):
        toks = sort_labels(self.tokens)
        derived = {}
        for u, d in self.entails:
            derived.setdefault(u, set()).add(d)
        out = []
        for k in range(len(toks) + 1):
            for x in combinations(toks, k):
                x = frozenset(x)
                if x not in self.con:
                    continue
                if all(derived.get(u, set()) <= x for u in self.con if u <= x):
                    out.append(x)
        return out


def translate_classical(sys):
    """C(A): drop tokens that alone entail the false token."""
    if len(sys) > DEFAULT_BOUND:
        raise TooLarge("classical translation enumerates every token subset")
    d_prime = frozenset(t for t in sys.tokens if sys.consistent_mask(sys.mask([t])))
    con = []
    ent = []
    for m in range(sys.full + 1):
        if sys.consistent_mask(m):
            u = sys.labels(m)
            con.append(u)
            c = sys.closure_mask(m)
            ent.extend((u, d) for d in sys.labels(c))
    return ClassicalInfoSystem(d_prime, frozenset(con), frozenset(ent))


def translate_algebraic(c, nabla="nabla"):
    """S(B): add a false token; inconsistent sets entail everything."""
    while nabla in c.tokens:
        nabla = nabla + "_"
    toks = sort_labels(c.tokens) + [nabla]
    derived = {}
    for u, d in c.entails:
        derived.setdefault(u, set()).add(d)
    index = {t: i for i, t in enumerate(toks)}
    full = (1 << len(toks)) - 1
    con = c.con

    def cl(m):
        u = frozenset(toks[i] for i in bits(m))
        if u not in con:
            return full
        return sum(1 << index[d] for d in derived.get(u, ()))

    return InfoSystem(toks, nabla, cl)


def drop_junk(sys):
    """Restrict the system to tokens that are consistent on their own (plus the false token)."""
    keep = [t for t in sys.tokens if t == sys.nabla or sys.consistent_mask(sys.mask([t]))]
    index = {t: i for i, t in enumerate(keep)}
    full = (1 << len(keep)) - 1
    def cl(m):
        c = sys.closure_mask(sys.mask(keep[i] for i in bits(m)))
        if c >> sys.nabla_bit & 1:
            return full
        return sum(1 << index[t] for t in sys.labels(c) if t in index)

    return InfoSystem(keep, sys.nabla, cl, bound=sys._bound)
