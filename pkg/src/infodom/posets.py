"""Finite partial orders: the carrier type for every finite domain here."""

from itertools import permutations, product

from ._bits import bits


class Poset:
    """A finite poset with elements stored in a fixed canonical order.

    ``leq`` is either a callable ``leq(a, b)`` or an iterable of pairs
    (reflexive pairs may be omitted; the transitive closure is not taken,
    so pass a full relation).
    """

    def __init__(self, elements, leq, *, check=True):
        self._elems = tuple(elements)
        self._index = {e: i for i, e in enumerate(self._elems)}
        if len(self._index) != len(self._elems):
            raise ValueError("duplicate poset elements")
        n = len(self._elems)
        if callable(leq):
            rel = leq
        else:
            pairs = set(leq)
            rel = lambda a, b: a == b or (a, b) in pairs
        up = [0] * n
        down = [0] * n
        for i, a in enumerate(self._elems):
            for j, b in enumerate(self._elems):
                if i == j or rel(a, b):
                    up[i] |= 1 << j
                    down[j] |= 1 << i
        self._up = up
        self._down = down
        if check:
            self._check_order()

    def _check_order(self):
        n = len(self._elems)
        for i in range(n):
            for j in bits(self._up[i]):
                if j != i and self._up[j] >> i & 1:
                    raise ValueError("relation is not antisymmetric")
                if self._up[j] & ~self._up[i]:
                    raise ValueError("relation is not transitive")

    @classmethod
    def from_sets(cls, family):
        """Family of (frozen)sets ordered by inclusion, sorted canonically."""
        fam = sorted({frozenset(s) for s in family}, key=lambda s: (len(s), sorted(map(repr, s))))
        return cls(fam, lambda a, b: a <= b, check=False)

    # basic access
    @property
    def elements(self):
        return self._elems

    def __len__(self):
        return len(self._elems)

    def __iter__(self):
        return iter(self._elems)

    def __contains__(self, x):
        return x in self._index

    def __repr__(self):
        return f"Poset({len(self)} elements)"

    def index(self, x):
        return self._index[x]

    def leq(self, a, b):
        return bool(self._up[self._index[a]] >> self._index[b] & 1)

    def lt(self, a, b):
        return a != b and self.leq(a, b)

    def _unmask(self, m):
        return frozenset(self._elems[i] for i in bits(m))

    def _mask(self, s):
        m = 0
        for x in s:
            m |= 1 << self._index[x]
        return m

    def up(self, x):
        return self._unmask(self._up[self._index[x]])

    def down(self, x):
        return self._unmask(self._down[self._index[x]])

    def up_of(self, s):
        m = 0
        for x in s:
            m |= self._up[self._index[x]]
        return self._unmask(m)

    # distinguished elements
    @property
    def bottom(self):
        full = (1 << len(self)) - 1
        for i, m in enumerate(self._up):
            if m == full:
                return self._elems[i]
        return None

    @property
    def top(self):
        full = (1 << len(self)) - 1
        for i, m in enumerate(self._down):
            if m == full:
                return self._elems[i]
        return None

    def maximal(self):
        return [x for i, x in enumerate(self._elems) if self._up[i] == 1 << i]

    def minimal(self):
        return [x for i, x in enumerate(self._elems) if self._down[i] == 1 << i]

    # bounds
    def _ub_mask(self, s):
        m = (1 << len(self)) - 1
        for x in s:
            m &= self._up[self._index[x]]
        return m

    def upper_bounds(self, s):
        return self._unmask(self._ub_mask(s))

    def is_bounded(self, s):
        return self._ub_mask(s) != 0

    def lub(self, s):
        """Least upper bound of ``s`` or ``None`` when it does not exist."""
        ub = self._ub_mask(s)
        for i in bits(ub):
            if self._up[i] & ub == ub:
                return self._elems[i]
        return None

    def glb(self, s):
        m = (1 << len(self)) - 1
        for x in s:
            m &= self._down[self._index[x]]
        for i in bits(m):
            if self._down[i] & m == m:
                return self._elems[i]
        return None

    def is_bounded_complete(self):
        """Every bounded subset has a lub (pairs suffice, plus the empty set)."""
        if self.bottom is None:
            return False
        for a, b in product(self._elems, repeat=2):
            if self.is_bounded((a, b)) and self.lub((a, b)) is None:
                return False
        return True

    def bounded_complete_witness(self):
        for a, b in product(self._elems, repeat=2):
            if self.is_bounded((a, b)) and self.lub((a, b)) is None:
                return (a, b)
        return None

    # up-sets; on a finite poset these are exactly the Scott open sets
    def is_upset(self, s):
        m = self._mask(s)
        return all(self._up[i] & ~m == 0 for i in bits(m))

    def upset_masks(self):
        n = len(self)
        if n > 20:
            raise ValueError("too many elements to enumerate up-sets")
        # tops first, so everything above i is decided before i
        order = sorted(range(n), key=lambda i: self._up[i].bit_count())
        out = []

        def extend(k, m):
            if k == n:
                out.append(m)
                return
            i = order[k]
            extend(k + 1, m)
            strict = self._up[i] & ~(1 << i)
            if strict & ~m == 0:
                extend(k + 1, m | (1 << i))

        extend(0, 0)
        return sorted(out)

    def upsets(self):
        return [self._unmask(m) for m in self.upset_masks()]

    def interior(self, s):
        """Largest up-set inside ``s`` (the Scott interior on a finite poset)."""
        m = self._mask(s)
        return self._unmask(sum(1 << i for i in bits(m) if self._up[i] & ~m == 0))

    def hasse(self):
        edges = []
        for i, a in enumerate(self._elems):
            strict = self._up[i] & ~(1 << i)
            for j in bits(strict):
                between = strict & self._down[j] & ~(1 << j)
                if not between:
                    edges.append((a, self._elems[j]))
        return edges

    def maximal_chains(self):
        cover = {x: [] for x in self._elems}
        for a, b in self.hasse():
            cover[a].append(b)
        chains = []

        def walk(path):
            nxt = cover[path[-1]]
            if not nxt:
                chains.append(tuple(path))
            for b in nxt:
                walk(path + [b])

        for m in self.minimal():
            walk([m])
        return chains

    def relabel(self, f):
        """Image poset under an injective relabelling ``f``."""
        elems = [f(x) for x in self._elems]
        pairs = {(f(a), f(b)) for a in self._elems for b in self._elems if self.leq(a, b)}
        return Poset(elems, lambda a, b: (a, b) in pairs, check=False)

    def find_isomorphism(self, other):
        """An order isomorphism ``self -> other`` as a dict, or ``None``."""
        if len(self) != len(other):
            return None

        def sig(p, x):
            i = p._index[x]
            return (p._up[i].bit_count(), p._down[i].bit_count())

        mine = sorted(self._elems, key=lambda x: sig(self, x))
        cands = {x: [y for y in other._elems if sig(other, y) == sig(self, x)] for x in mine}
        used = set()
        phi = {}

        def go(k):
            if k == len(mine):
                return True
            x = mine[k]
            for y in cands[x]:
                if y in used:
                    continue
                ok = all(self.leq(x, z) == other.leq(y, phi[z]) and self.leq(z, x) == other.leq(phi[z], y)
                         for z in phi)
                if ok:
                    phi[x] = y
                    used.add(y)
                    if go(k + 1):
                        return True
                    del phi[x]
                    used.discard(y)
            return False

        return dict(phi) if go(0) else None

    def is_isomorphic(self, other):
        return self.find_isomorphism(other) is not None


def is_order_isomorphism(p, q, phi):
    """Check that the dict ``phi`` is a bijection ``p -> q`` preserving and reflecting order."""
    if set(phi) != set(p.elements) or set(phi.values()) != set(q.elements):
        return False
    if len(set(phi.values())) != len(phi):
        return False
    return all(p.leq(a, b) == q.leq(phi[a], phi[b]) for a in p for b in p)


def is_monotone(p, q, table):
    return all(q.leq(table[a], table[b]) for a in p for b in p if p.leq(a, b))


def monotone_maps(p, q):
    """Enumerate all monotone maps ``p -> q`` as dicts."""
    order = sorted(p.elements, key=lambda x: len(p.down(x)))
    q_elems = q.elements

    def go(k, acc):
        if k == len(order):
            yield dict(acc)
            return
        x = order[k]
        for y in q_elems:
            if all(q.leq(acc[z], y) for z in acc if p.leq(z, x)) and \
                    all(q.leq(y, acc[z]) for z in acc if p.leq(x, z)):
                acc[x] = y
                yield from go(k + 1, acc)
                del acc[x]

    yield from go(0, {})


def _canonical(k, rel):
    best = None
    for perm in permutations(range(k)):
        enc = tuple(sorted((perm[a], perm[b]) for a, b in rel))
        if best is None or enc < best:
            best = enc
    return best


def all_posets(k):
    """All posets on ``k`` points up to isomorphism, as sets of strict pairs on range(k)."""
    pairs = [(a, b) for a in range(k) for b in range(k) if a != b]
    seen = set()
    out = []
    for choice in product((0, 1), repeat=len(pairs)):
        rel = {p for p, c in zip(pairs, choice) if c}
        if any((b, a) in rel for a, b in rel):
            continue
        if any((a, c) not in rel for a, b in rel for b2, c in rel if b == b2 and a != c):
            continue
        key = _canonical(k, rel)
        if key not in seen:
            seen.add(key)
            out.append(set(key))
    return out


def all_domains(max_size, bounded_complete=True):
    """Finite posets with a least element, up to isomorphism, sizes 1..max_size.

    Elements are the integers ``0..n-1`` with 0 the bottom.
    """
    result = []
    for n in range(1, max_size + 1):
        for rel in all_posets(n - 1):
            strict = {(a + 1, b + 1) for a, b in rel} | {(0, j) for j in range(1, n)}
            p = Poset(range(n), strict, check=False)
            if not bounded_complete or p.is_bounded_complete():
                result.append(p)
    return result
