"""Approximable mappings between information systems and the function space."""

from __future__ import annotations

from typing import Callable, Iterable, Mapping

from ._bits import bits, downset_indicator, submasks
from .errors import ConsistencyViolation, NotMonotone, SystemMismatch, TooLarge
from .infosys import InfoSystem

FUNCTION_SPACE_LIMIT = 1 << 14


class ApproxMapping:
    """A mapping stored through its largest outputs.

    ``out`` receives an element of ``src`` (a closed consistent mask) and
    returns the largest ``v`` with ``x f v``.  Inconsistent inputs map to the
    full token set of ``dst`` as the axioms require.
    """

    def __init__(self, src: InfoSystem, dst: InfoSystem, out: Callable[[int], int]):
        self.src = src
        self.dst = dst
        self._out = out
        self._memo: dict[int, int] = {}

    def out_mask(self, u: int) -> int:
        x = self.src.closure_mask(u)
        r = self._memo.get(x)
        if r is None:
            if x >> self.src.nabla_bit & 1:
                r = self.dst.full
            else:
                r = self.dst.closure_mask(self._out(x))
            self._memo[x] = r
        return r

    def relates(self, u: Iterable, v: Iterable) -> bool:
        return self.dst.mask(v) & ~self.out_mask(self.src.mask(u)) == 0

    def apply(self, x: Iterable) -> frozenset:
        """|f|(x) for a theory ``x`` of the source."""
        return self.dst.labels(self.out_mask(self.src.mask(x)))

    def __call__(self, x):
        return self.apply(x)

    def rel(self) -> set:
        """The relation as explicit pairs of token sets (small systems only)."""
        if len(self.src) + len(self.dst) > 12:
            raise TooLarge("relation too large to materialize")
        out = set()
        for u in range(self.src.full + 1):
            o = self.out_mask(u)
            lu = self.src.labels(u)
            for v in submasks(o):
                out.add((lu, self.dst.labels(v)))
        return out

    def table(self) -> dict:
        return {self.src.labels(x): self.dst.labels(self.out_mask(x))
                for x in self.src.element_masks()}

    def _key(self):
        return tuple(self.out_mask(x) for x in self.src.element_masks())

    def __eq__(self, other):
        if not isinstance(other, ApproxMapping):
            return NotImplemented
        return self.src == other.src and self.dst == other.dst and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __le__(self, other: "ApproxMapping") -> bool:
        """Inclusion of relations, equivalently pointwise order of |f|."""
        return all(self.out_mask(x) & ~other.out_mask(x) == 0 for x in self.src.element_masks())

    def __repr__(self):
        return f"ApproxMapping({len(self.src)} -> {len(self.dst)} tokens)"


def _gen_masks(src, dst, generators):
    return [(src.mask(u), dst.mask(v)) for u, v in generators]


def _check_consistency(f: ApproxMapping):
    for x in f.src.element_masks():
        if not f.dst.consistent_mask(f.out_mask(x)):
            raise ConsistencyViolation(
                f"consistent input {sorted(map(str, f.src.labels(x)))} is forced to the false token")


def saturate_mapping(src: InfoSystem, dst: InfoSystem, generators) -> ApproxMapping:
    """Least approximable mapping containing the generator pairs."""
    gens = _gen_masks(src, dst, generators)

    def out(x):
        acc = 0
        for u, v in gens:
            if u & ~x == 0:
                acc |= v
        return acc

    f = ApproxMapping(src, dst, out)
    _check_consistency(f)
    return f


def from_pairs(src, dst, generators):
    return saturate_mapping(src, dst, generators)


def identity(sys: InfoSystem) -> ApproxMapping:
    return ApproxMapping(sys, sys, lambda x: x)


def minimal_mapping(src, dst):
    return ApproxMapping(src, dst, lambda x: 0)


def apply(f: ApproxMapping, x) -> frozenset:
    return f.apply(x)


def from_function(src: InfoSystem, dst: InfoSystem, g: Mapping) -> ApproxMapping:
    """The mapping u g^ v iff v is below g(x) for every theory x containing u."""
    elems = src.element_masks()
    dst_elems = set(dst.element_masks())
    table = {}
    for x in elems:
        key = src.labels(x)
        if key not in g:
            raise ValueError(f"function table misses {sorted(map(str, key))}")
        y = dst.mask(g[key])
        if y not in dst_elems:
            raise ValueError("function value is not a theory of the target")
        table[x] = y
    for x in elems:
        for y in elems:
            if x & ~y == 0 and table[x] & ~table[y]:
                raise NotMonotone(f"{sorted(map(str, src.labels(x)))} <= "
                                  f"{sorted(map(str, src.labels(y)))} but images are not ordered")

    def out(u):
        acc = dst.full
        for x in elems:
            if u & ~x == 0:
                acc &= table[x]
        return acc

    return ApproxMapping(src, dst, out)


def compose(g: ApproxMapping, f: ApproxMapping) -> ApproxMapping:
    """g after f: u h w iff some v has u f v and v g w."""
    if f.dst != g.src:
        raise SystemMismatch("the output system of f is not the input system of g")
    return ApproxMapping(f.src, g.dst, lambda x: g.out_mask(f.out_mask(x)))


def mapping_axiom_report(src: InfoSystem, dst: InfoSystem, rel) -> dict:
    """Literal check of the five axioms on an explicit relation (tiny systems)."""
    rel = {(frozenset(u), frozenset(v)) for u, v in rel}
    n_src, n_dst = len(src), len(dst)
    if n_src + n_dst > 10:
        raise TooLarge("literal axiom check is limited to 10 tokens in total")
    S = [src.labels(m) for m in range(src.full + 1)]
    T = [dst.labels(m) for m in range(dst.full + 1)]
    empty = frozenset()
    a1 = (empty, empty) in rel
    a2 = all((u, frozenset([dst.nabla])) not in rel for u in S if src.is_consistent(u))
    a3 = (frozenset([src.nabla]), frozenset([dst.nabla])) in rel
    by_u = {}
    for u, v in rel:
        by_u.setdefault(u, []).append(v)
    a4 = True
    for u, vs in by_u.items():
        big = frozenset().union(*vs)
        if (u, big) not in rel:
            a4 = False
            break
    a5 = True
    for u, v in rel:
        for u2 in S:
            if not src.entails(u2, u):
                continue
            for v2 in T:
                if dst.entails(v, v2) and (u2, v2) not in rel:
                    a5 = False
                    break
            if not a5:
                break
        if not a5:
            break
    return {"empty_pair": a1, "consistency": a2, "nabla_pair": a3,
            "accumulation": a4, "transitivity": a5}


class FunctionSpace(InfoSystem):
    """[A -> B]: tokens are pairs of finite token sets, elements are mappings."""

    def __init__(self, A: InfoSystem, B: InfoSystem):
        nA, nB = len(A), len(B)
        W = 1 << nB
        count = (1 << nA) * W
        if count > FUNCTION_SPACE_LIMIT:
            raise TooLarge(f"function space would have {count} tokens")
        self.A, self.B, self.W = A, B, W
        self._block = (1 << W) - 1
        self._down = downset_indicator(nB)
        a_elems = A.element_masks()
        self._a_elems = a_elems
        self._clA = [A.closure_mask(u) for u in range(1 << nA)]
        tokens = [(A.labels(iu), B.labels(iv)) for iu in range(1 << nA) for iv in range(W)]
        nabla = (frozenset(), frozenset([B.nabla]))
        basis = [x * W + (1 << d) for x in a_elems for d in range(nB) if d != B.nabla_bit]
        basis = [1 << t for t in basis]
        super().__init__(tokens, nabla, self._closure, basis=basis, bound=None)

    def token_index(self, u_mask: int, v_mask: int) -> int:
        return u_mask * self.W + v_mask

    def _outputs(self, m):
        """Largest outputs of the least mapping containing the pairs in ``m``."""
        W, B = self.W, self.B
        acc = {}
        iu = 0
        while m:
            block = m & self._block
            if block:
                v = 0
                for b in bits(block):
                    v |= b
                acc[iu] = v
            m >>= W
            iu += 1
        outs = {}
        for x in self._a_elems:
            v = 0
            for u, vv in acc.items():
                if u & ~x == 0:
                    v |= vv
            c = B.closure_mask(v)
            if c >> B.nabla_bit & 1:
                return None
            outs[x] = c
        return outs

    def _closure(self, m):
        outs = self._outputs(m)
        if outs is None:
            return self.full
        return self.pack(lambda u: outs[u])

    def pack(self, out_of_element) -> int:
        """Token mask of the mapping whose largest output at element x is given."""
        A, W = self.A, self.W
        r = 0
        for iu in range(1 << len(A)):
            x = self._clA[iu]
            if x >> A.nabla_bit & 1:
                blk = self._block
            else:
                blk = self._down[out_of_element(x)]
            r |= blk << (iu * W)
        return r

    def element_of(self, f: ApproxMapping) -> int:
        if f.src != self.A or f.dst != self.B:
            raise SystemMismatch("mapping does not live in this function space")
        return self.pack(f.out_mask)

    def mapping_of(self, m: int) -> ApproxMapping:
        """The approximable mapping whose token set is the element ``m``."""
        c = self.closure_mask(m)
        if c >> self.nabla_bit & 1:
            raise ConsistencyViolation("token set is not a consistent mapping")
        W = self.W

        def out(x):
            return ((c >> (x * W)) & self._block).bit_length() - 1

        return ApproxMapping(self.A, self.B, out)

    def mappings(self):
        return [self.mapping_of(m) for m in self.element_masks()]


def function_space(A: InfoSystem, B: InfoSystem) -> FunctionSpace:
    return FunctionSpace(A, B)
