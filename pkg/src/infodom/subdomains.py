"""Algebraic subdomains as generalized non-trivial closures, and Sub(A)."""

from ._bits import submasks
from .errors import InternalInconsistency, SystemMismatch
from .fixpoints import fixed_point_masks, targets_top
from .infosys import InfoSystem, chain_closure
from .mappings import ApproxMapping, FunctionSpace
from .posets import Poset


def is_generalized_closure(f):
    """The three defining conditions, each as a boolean."""
    if not targets_top(f):
        raise SystemMismatch("a generalized closure maps A into A_top")
    A = f.src
    DA = A.full
    masks = range(DA + 1) if len(A) <= 10 else A.element_masks()
    refl = all(A.closure_mask(u) & ~f.out_mask(u) == 0 for u in masks)
    # both steps restricted to tokens of A, as R_t is
    trans = all(f.out_mask(f.out_mask(u) & DA) & DA & ~f.out_mask(u) == 0 for u in masks)
    nontrivial = not f.out_mask(0) >> A.nabla_bit & 1
    return {"reflexive": refl, "transitive": trans, "nontrivial": nontrivial}


def closure_subdomain(f):
    """Elements of |A| that stay consistent and closed under f."""
    report = is_generalized_closure(f)
    if not all(report.values()):
        bad = [k for k, v in report.items() if not v]
        raise ValueError(f"not a generalized non-trivial closure: {', '.join(bad)} fails")
    A = f.src
    closed = [x for x in A.element_masks() if f.out_mask(x) & ~x == 0]
    if sorted(closed) != sorted(fixed_point_masks(f)):
        raise InternalInconsistency("closed elements differ from fixed points")
    return Poset([A.labels(x) for x in closed], lambda a, b: a <= b, check=False)


def closure_from_fixed_set(A, S):
    """The generalized closure with fixed-point set ``S`` (theories), or None."""
    T = A.add_top()
    ms = [A.mask(s) for s in S]
    if not ms:
        return None
    table = {}
    for x in A.element_masks():
        above = [s for s in ms if x & ~s == 0]
        if not above:
            table[x] = A.full
            continue
        least = [s for s in above if all(s & ~t == 0 for t in above)]
        if not least:
            return None
        table[x] = least[0]
    return ApproxMapping(A, T, table.__getitem__)


class SubSystem(InfoSystem):
    """Sub(A): theories of [A -> A_top] closed under R_r, R_t and R_n."""

    def __init__(self, A):
        T = A.add_top()
        F = FunctionSpace(A, T)
        n = len(A)
        tok = lambda u, v: 1 << F.token_index(u, v)
        r_r = [(0, tok(u, v)) for u in range(1 << n) for v in submasks(A.closure_mask(u))]
        r_t = [(tok(u, v) | tok(v, w), tok(u, w))
               for u in range(1 << n) for v in range(1 << n) for w in range(1 << n)]
        r_n = [(tok(0, 1 << A.nabla_bit), 1 << F.nabla_bit)]
        self.A, self.T, self.F = A, T, F
        self.rule_sets = {"R_r": r_r, "R_t": r_t, "R_n": r_n}
        rules = r_r + r_t + r_n
        super().__init__(F.tokens, F.nabla,
                         chain_closure(rules, F.closure_mask, F.nabla_bit, F.full),
                         basis=F._basis, bound=None)

    def closure_of(self, m):
        """The generalized closure A -> A_top represented by element ``m``."""
        return self.F.mapping_of(m)

    def element_of(self, f):
        return self.F.element_of(f)

    def closures(self):
        return [self.closure_of(m) for m in self.element_masks()]

    def subdomain_of(self, m):
        f = self.closure_of(m)
        return frozenset(self.A.labels(x) for x in fixed_point_masks(f))

    def order(self):
        """Element poset of Sub(A), keyed by element masks."""
        els = self.element_masks()
        return Poset(els, lambda a, b: a & ~b == 0, check=False)

    def least_mask(self):
        return self.closure_mask(0)


def sub_system(A):
    return SubSystem(A)


def sub_embedding(A, S=None):
    """(i, j): |i|(y) = x |-> x join y, and |j|(r) = |r|(bottom)."""
    S = S if S is not None else SubSystem(A)
    T, F = S.T, S.F

    def out_i(y):
        return F.pack(lambda x: T.closure_mask(x | y))

    def out_j(r):
        v = (r & F._block).bit_length() - 1
        return v & A.full

    return ApproxMapping(A, S, out_i), ApproxMapping(S, A, out_j)
