"""Finitarity criteria for retractions and projections, quotients, and Pr."""

from dataclasses import dataclass, field

from ._bits import bits, mask_key, submasks
from .errors import InternalInconsistency, NotARetraction
from .fixpoints import as_endo, classify, fixed_point_masks, targets_top
from .infosys import InfoSystem
from .mappings import ApproxMapping, FunctionSpace


@dataclass
class RetractionWitness:
    mapping: ApproxMapping
    profile: object
    intermediate_reflexive: bool
    mode: str = "retraction"
    witnesses: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def verdict(self):
        return self.intermediate_reflexive


def _masks(sys):
    return range(sys.full + 1)


def _least(cands):
    # candidates come from submasks; the canonical key puts subsets first
    best = None
    for v in cands:
        if best is None or mask_key(v) < mask_key(best):
            best = v
    return best


def _search(g, pred):
    """For each pair u g w, the least v with pred(u, v, w), plus failures."""
    sys = g.src
    wit, bad = {}, []
    for u in _masks(sys):
        ou = g.out_mask(u)
        for w in submasks(ou):
            v = _least(v for v in submasks(sys.full) if pred(u, v, w))
            if v is None:
                bad.append((u, w))
            else:
                wit[(u, w)] = v
    return wit, bad


def condition2(g, u, v, w):
    o = g.out_mask
    return v & ~o(u) == 0 and v & ~o(v) == 0 and w & ~o(v) == 0


def condition3(g, u, v, w):
    o = g.out_mask
    return v & ~o(u) == 0 and v & ~o(v) == 0 and w & ~g.src.closure_mask(v) == 0


def projection_condition(g, u, v, w):
    cl, o = g.src.closure_mask, g.out_mask
    return v & ~cl(u) == 0 and v & ~o(v) == 0 and w & ~cl(v) == 0


def quasi_minimal_condition(g, u, v, w):
    cl, o = g.src.closure_mask, g.out_mask
    return v & ~cl(u) == 0 and v & ~o(v) == 0 and w & ~o(v) == 0


def holds(g, cond):
    """Does u g w imply some v satisfying ``cond``?"""
    sys = g.src
    full = sys.full
    for u in _masks(sys):
        for w in submasks(g.out_mask(u)):
            if not any(cond(g, u, v, w) for v in submasks(full)):
                return False
    return True


def is_finitary(r, mode="retraction"):
    """Relation-level finitarity criterion with least intermediate witnesses."""
    prof = classify(r)
    if not prof.retraction:
        raise NotARetraction("mapping is not transitive and inverse transitive")
    if mode == "projection" and not prof.inverse_reflexive:
        raise NotARetraction("mapping is not inverse reflexive")
    if mode not in ("retraction", "projection"):
        raise ValueError(f"unknown mode {mode!r}")
    g = as_endo(r)
    cond = condition2 if mode == "retraction" else projection_condition
    wit, bad = _search(g, lambda u, v, w: cond(g, u, v, w))
    return RetractionWitness(r, prof, not bad, mode, wit, bad)


def fin3_conditions(r):
    g = as_endo(r)
    return holds(g, condition2), holds(g, condition3)


def is_quasi_minimal(r):
    return holds(as_endo(r), quasi_minimal_condition)


def is_strongly_finitary(r):
    """Finite elements of Fix stay finite in the source; every element is finite here."""
    fixed_point_masks(as_endo(r))
    return True


def abstract_projection_criterion(p):
    g = as_endo(p)
    els = g.src.element_masks()
    fix = [y for y in els if g.out_mask(y) == y]
    for x in els:
        px = g.out_mask(x)
        for z in els:
            if z & ~px == 0 and not any(z & ~y == 0 and y & ~x == 0 for y in fix):
                return False
    return True


def abstract_retraction_criterion(r):
    g = as_endo(r)
    els = g.src.element_masks()
    o = g.out_mask
    for x in els:
        rx = o(x)
        for z in els:
            if z & ~rx:
                continue
            if not any(y & ~rx == 0 and y & ~o(y) == 0 and z & ~o(y) == 0 for y in els):
                return False
    return True


def huth_criterion(r):
    """Each fixed point is the join of r(x0) over x0 with x0 <= r(x0) <= x."""
    g = as_endo(r)
    els = g.src.element_masks()
    o = g.out_mask
    for x in els:
        if o(x) != x:
            continue
        acc = 0
        for x0 in els:
            rx0 = o(x0)
            if x0 & ~rx0 == 0 and rx0 & ~x == 0:
                acc |= rx0
        if g.src.closure_mask(acc) != x:
            return False
    return True


class RetractSystem(InfoSystem):
    """A^r (or A^p): tokens are finite sets u with u r u; the false token is {nabla}."""

    def __init__(self, A, r, *, projection=False, conjunctive=False):
        self.source, self.mapping = A, r
        self.conjunctive = conjunctive
        DA = A.full
        top = targets_top(r)
        o = lambda u: r.out_mask(u) & DA if top else r.out_mask(u)
        if conjunctive:
            toks = [i for i in range(len(A)) if (1 << i) & ~o(1 << i) == 0]
            self._tok_masks = [1 << i for i in toks]
            labels = [A.tokens[i] for i in toks]
            nabla = A.nabla
            nb_src = A.nabla_bit

            def cl(m):
                u = self._union(m)
                c = A.closure_mask(u)
                if c >> nb_src & 1:
                    return self.full
                return self._tokens_under(c)
        else:
            ds = sorted((u for u in range(DA + 1) if u and u & ~o(u) == 0), key=mask_key)
            self._tok_masks = ds
            labels = [A.labels(u) for u in ds]
            nabla = frozenset([A.nabla])
            step = A.closure_mask if projection else o

            def cl(m):
                c = step(self._union(m))
                if c >> A.nabla_bit & 1:
                    return self.full
                return self._tokens_under(c)

        super().__init__(labels, nabla, cl, bound=None)
        self.isomorphic = self._check_iso()

    def _union(self, m):
        u = 0
        for i in bits(m):
            u |= self._tok_masks[i]
        return u

    def _tokens_under(self, x):
        return sum(1 << i for i, u in enumerate(self._tok_masks) if u & ~x == 0)

    def embed(self, x):
        """Fixed point (mask of A) to element of the quotient."""
        return self._tokens_under(x)

    def restore(self, y):
        u = self._union(y)
        return self.source.closure_mask(u) if self.conjunctive else u

    def _check_iso(self):
        fix = fixed_point_masks(self.mapping)
        els = set(self.element_masks())
        img = {x: self.embed(x) for x in fix}
        if set(img.values()) != els or len(els) != len(fix):
            return False
        if any(self.restore(img[x]) != x for x in fix):
            return False
        return all((a & ~b == 0) == (img[a] & ~img[b] == 0) for a in fix for b in fix)


def retract_system(A, r, *, projection=False, conjunctive=False):
    """Quotient system whose domain is isomorphic to Fix(r).

    In the non-conjunctive construction a failed isomorphism raises
    ``InternalInconsistency``; the conjunctive variant reports it in
    ``isomorphic`` since it only succeeds on conjunctively complete inputs.
    """
    if r.src != A:
        raise ValueError("mapping does not start at the given system")
    prof = classify(r)
    if not prof.retraction:
        raise NotARetraction("mapping is not a retraction")
    Q = RetractSystem(A, r, projection=projection, conjunctive=conjunctive)
    if not conjunctive and not Q.isomorphic:
        raise InternalInconsistency("quotient is not isomorphic to the fixed points")
    return Q


def conjunctive_completion(A):
    from .mappings import identity
    return retract_system(A, identity(A))


def pr_operator(A):
    """Pr: u Pr(g) w iff some v has u |- v, v g v and v |- w."""

    def pr(g):
        if g.src != A or g.dst != A:
            raise ValueError("Pr acts on endomappings of the given system")

        def out(x):
            acc = 0
            for v in submasks(x):
                if v & ~g.out_mask(v) == 0:
                    acc |= v
            return A.closure_mask(acc)

        return ApproxMapping(A, A, out)

    return pr


def finitary_retractions(A, *, generalized=False, mode="retraction"):
    """All (generalized) finitary retractions on a small system, by enumeration."""
    B = A.add_top() if generalized else A
    out = []
    for f in FunctionSpace(A, B).mappings():
        prof = classify(f)
        if not prof.retraction or (mode == "projection" and not prof.inverse_reflexive):
            continue
        if generalized and f.out_mask(0) >> A.nabla_bit & 1:
            continue
        if is_finitary(f, mode).verdict:
            out.append(f)
    return out
