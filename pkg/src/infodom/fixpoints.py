"""Rule/property dictionary for mappings, fixed points and finitary systems."""

from dataclasses import dataclass

from ._bits import bits, mask_key, submasks
from .errors import (AxiomViolation, InternalInconsistency, SystemMismatch,
                     TooLarge, TrivialMapping)
from .infosys import TopExtension, minimal_system
from .mappings import ApproxMapping
from .posets import Poset


@dataclass(frozen=True)
class MappingProfile:
    reflexive: bool
    transitive: bool
    inverse_transitive: bool
    inverse_reflexive: bool

    @property
    def closure(self):
        return self.reflexive and self.transitive

    @property
    def projection(self):
        return self.inverse_reflexive and self.inverse_transitive

    @property
    def retraction(self):
        return self.transitive and self.inverse_transitive

    def as_dict(self):
        return {"reflexive": self.reflexive, "transitive": self.transitive,
                "inverse_transitive": self.inverse_transitive,
                "inverse_reflexive": self.inverse_reflexive,
                "closure": self.closure, "projection": self.projection,
                "retraction": self.retraction}


def targets_top(f):
    """True for mappings A -> A_top, False for endomappings, else SystemMismatch."""
    if f.dst == f.src:
        return False
    if isinstance(f.dst, TopExtension) and f.dst.base == f.src:
        return True
    raise SystemMismatch("mapping is neither an endomapping nor a mapping into A_top")


def extend_to_top(f):
    """The endomapping r' of A_top agreeing with f and sending the top to itself."""
    T = f.dst
    base_full = f.src.full

    def out(x):
        if x == base_full:
            return base_full
        return f.out_mask(x)

    return ApproxMapping(T, T, out)


def as_endo(f):
    return extend_to_top(f) if targets_top(f) else f


def _syntactic(f):
    A = f.src
    masks = range(A.full + 1) if len(A) <= 10 else A.element_masks()
    o = f.out_mask
    refl = trans = invtrans = invrefl = True
    for u in masks:
        ou = o(u)
        oo = o(ou)
        refl = refl and u & ~ou == 0
        trans = trans and oo & ~ou == 0
        invtrans = invtrans and ou & ~oo == 0
        invrefl = invrefl and ou & ~A.closure_mask(u) == 0
    return MappingProfile(refl, trans, invtrans, invrefl)


def _semantic(f):
    refl = trans = invtrans = invrefl = True
    for x in f.src.element_masks():
        fx = f.out_mask(x)
        ffx = f.out_mask(fx)
        refl = refl and x & ~fx == 0
        trans = trans and ffx & ~fx == 0
        invtrans = invtrans and fx & ~ffx == 0
        invrefl = invrefl and fx & ~x == 0
    return MappingProfile(refl, trans, invtrans, invrefl)


def classify(f):
    """Profile of an endomapping (or of the top-extension of a mapping into A_top).

    The relation-level flags are recomputed on elements; a disagreement
    raises ``InternalInconsistency``.
    """
    g = as_endo(f)
    syn = _syntactic(g)
    sem = _semantic(g)
    if syn != sem:
        raise InternalInconsistency(f"relation-level {syn} differs from element-level {sem}")
    return syn


def fixed_point_masks(f):
    top = targets_top(f)
    if top and f.out_mask(0) >> f.src.nabla_bit & 1:
        raise TrivialMapping("|f| sends the least element to the top")
    return [x for x in f.src.element_masks() if f.out_mask(x) == x]


def fixed_points(f, A=None):
    """{x in |A| : |f|(x) = x}, ordered by inclusion (possibly empty)."""
    if A is not None and A != f.src:
        raise SystemMismatch("mapping does not start at the given system")
    src = f.src
    return Poset([src.labels(x) for x in fixed_point_masks(f)], lambda a, b: a <= b, check=False)


class FinitaryInfoSystem:
    """A finitary entailment, stored as the largest output of each token set."""

    kind = "finitary"

    def __init__(self, tokens, nabla, out, *, generators=None):
        self.tokens = tuple(tokens)
        self.nabla = nabla
        self._index = {t: i for i, t in enumerate(self.tokens)}
        self.nabla_bit = self._index[nabla]
        self.full = (1 << len(self.tokens)) - 1
        self._out = out
        self._memo = {}
        self.generators = generators

    def __len__(self):
        return len(self.tokens)

    def mask(self, labels):
        try:
            return sum(1 << self._index[t] for t in set(labels))
        except KeyError as e:
            raise ValueError(f"unknown token {e.args[0]!r}") from None

    def labels(self, m):
        return frozenset(self.tokens[i] for i in bits(m))

    def out_mask(self, u):
        r = self._memo.get(u)
        if r is None:
            if u >> self.nabla_bit & 1:
                r = self.full
            else:
                r = self._out(u)
                if r >> self.nabla_bit & 1:
                    r = self.full
            self._memo[u] = r
        return r

    def entails(self, u, v):
        return self.mask(v) & ~self.out_mask(self.mask(u)) == 0

    def rel(self):
        if len(self) > 8:
            raise TooLarge("relation materialized only up to 8 tokens")
        return {(self.labels(u), self.labels(v))
                for u in range(self.full + 1) for v in submasks(self.out_mask(u))}

    def element_masks(self):
        if len(self) > 16:
            raise TooLarge("finitary domains are enumerated up to 16 tokens")
        nb = self.nabla_bit
        xs = [x for x in range(self.full + 1) if not x >> nb & 1 and self.out_mask(x) == x]
        return sorted(xs, key=mask_key)

    def elements(self):
        return [self.labels(x) for x in self.element_masks()]

    def minimal(self):
        return minimal_system(self.tokens, self.nabla, bound=None)

    def to_mapping(self):
        """The mapping A^m -> A^m_top with u f v iff u |-' v or nabla in u."""
        Am = self.minimal()
        return ApproxMapping(Am, Am.add_top(), self.out_mask)

    def __eq__(self, other):
        if not isinstance(other, FinitaryInfoSystem):
            return NotImplemented
        if set(self.tokens) != set(other.tokens) or self.nabla != other.nabla:
            return False
        return all(self.labels(self.out_mask(u)) == other.labels(other.out_mask(other.mask(self.labels(u))))
                   for u in range(self.full + 1))

    __hash__ = None

    @classmethod
    def from_relation(cls, tokens, nabla, rel):
        """Validate an explicit relation against the six axioms, in order."""
        tokens = list(tokens)
        index = {t: i for i, t in enumerate(tokens)}
        n = len(tokens)
        if n > 8:
            raise TooLarge("explicit relations are validated up to 8 tokens")
        size = 1 << n
        nb = index[nabla]
        S = [0] * size
        for u, v in rel:
            S[sum(1 << index[t] for t in set(u))] |= 1 << sum(1 << index[t] for t in set(v))
        everything = (1 << size) - 1
        if S[0] >> (1 << nb) & 1:
            raise AxiomViolation(1, "the empty set entails the false token")
        if not S[0] & 1:
            raise AxiomViolation(2, "the empty set does not entail the empty set")
        for u in range(size):
            vs = list(bits(S[u]))
            for i, a in enumerate(vs):
                for b in vs[i + 1:]:
                    if not S[u] >> (a | b) & 1:
                        raise AxiomViolation(3, "outputs are not accumulated")
        for u in range(size):
            for v in bits(S[u]):
                for w in submasks(v):
                    if not S[u] >> w & 1:
                        raise AxiomViolation(4, "outputs are not closed under subsets")
            for t in range(n):
                if S[u] & ~S[u | (1 << t)]:
                    raise AxiomViolation(4, "larger inputs lose outputs")
        for u in range(size):
            if S[u] >> (1 << nb) & 1 and S[u] != everything:
                raise AxiomViolation(5, "the false token does not entail everything")
        for u in range(size):
            if u >> nb & 1 and S[u] != everything:
                raise AxiomViolation(6, "sets with the false token do not entail everything")
        table = [S[u].bit_length() - 1 for u in range(size)]
        return cls(tokens, nabla, table.__getitem__)

    @classmethod
    def from_generators(cls, tokens, nabla, generators):
        """Least finitary entailment containing the generators (no transitivity)."""
        tokens = list(tokens)
        index = {t: i for i, t in enumerate(tokens)}
        gens = [(sum(1 << index[t] for t in set(u)), sum(1 << index[t] for t in set(v)))
                for u, v in generators]

        def out(u):
            acc = 0
            for a, b in gens:
                if a & ~u == 0:
                    acc |= b
            return acc

        F = cls(tokens, nabla, out, generators=[(frozenset(u), frozenset(v)) for u, v in generators])
        if F.out_mask(0) >> F.nabla_bit & 1:
            raise AxiomViolation(1, "the empty set entails the false token")
        return F

    @classmethod
    def from_mapping(cls, f):
        """u |-' v iff u f v and v avoids the new false token."""
        A = f.src
        if targets_top(f) and f.out_mask(0) >> A.nabla_bit & 1:
            raise TrivialMapping("|f| sends the least element to the top")
        base_full = A.full
        return cls(A.tokens, A.nabla, lambda u: f.out_mask(u) & base_full)


def finitary_domain(F):
    """Theories x = out(x) of F, cross-checked against fixed points over A^m."""
    direct = F.element_masks()
    via = fixed_point_masks(F.to_mapping())
    if sorted(direct) != sorted(via):
        raise InternalInconsistency("finitary theories differ from fixed points over A^m")
    return Poset(F.elements(), lambda a, b: a <= b, check=False)


def fix_subdomain(A, f):
    if f.src != A:
        raise SystemMismatch("mapping does not start at the given system")
    return FinitaryInfoSystem.from_mapping(f)


def transitivity_experiment(systems, mappings_of):
    """Compare fixed-point domains of all mappings with those of transitive ones.

    ``mappings_of(A)`` yields candidate mappings.  Returns, per system, the
    numbers of distinct fixed-point sets reached by each class.  Nothing is
    asserted about the outcome.
    """
    out = []
    for A in systems:
        every, trans = set(), set()
        for f in mappings_of(A):
            try:
                fix = frozenset(fixed_point_masks(f))
            except TrivialMapping:
                continue
            every.add(fix)
            if classify(f).transitive:
                trans.add(fix)
        out.append((len(every), len(trans)))
    return out
