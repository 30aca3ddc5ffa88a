"""Brute-force reference computations used as test oracles.

Nothing here calls into the library's algorithms: each routine works
from raw definitions over explicit finite sets and relations.
"""

from fractions import Fraction
from itertools import chain, combinations, product
import random


def subsets(xs):
    xs = list(xs)
    return [frozenset(c) for c in chain.from_iterable(combinations(xs, k) for k in range(len(xs) + 1))]


# information systems -------------------------------------------------------

def theories(tokens, nabla, generators):
    """Subsets avoiding nabla that are closed under every generator rule."""
    gens = [(frozenset(l), frozenset(r)) for l, r in generators]
    out = []
    for x in subsets(t for t in tokens if t != nabla):
        if all(not l <= x or r <= x for l, r in gens):
            out.append(x)
    return out


def random_generators(rng, n_tokens, nabla="n", max_rules=5):
    toks = [f"t{i}" for i in range(n_tokens)]
    gens = []
    for _ in range(rng.randint(0, max_rules)):
        lhs = frozenset(t for t in toks if rng.random() < 0.4)
        if rng.random() < 0.15 and lhs:
            rhs = frozenset([nabla])
        else:
            rhs = frozenset(t for t in toks if rng.random() < 0.35)
        gens.append((lhs, rhs))
    return toks + [nabla], gens


# orders and maps -------------------------------------------------------------

def leq_table(elements, leq):
    return {(a, b): leq(a, b) for a in elements for b in elements}


def monotone_count(src, src_leq, dst, dst_leq):
    src, dst = list(src), list(dst)
    n = 0
    for vals in product(dst, repeat=len(src)):
        f = dict(zip(src, vals))
        if all(dst_leq(f[a], f[b]) for a in src for b in src if src_leq(a, b)):
            n += 1
    return n


def subset_order_isomorphic(fam_a, fam_b):
    """Inclusion-ordered families compared by brute force over bijections."""
    from itertools import permutations
    a, b = list(fam_a), list(fam_b)
    if len(a) != len(b):
        return False
    for perm in permutations(b):
        if all((x <= y) == (perm[i] <= perm[j]) for i, x in enumerate(a) for j, y in enumerate(a)):
            return True
    return False


def closure_fixed_sets(elements):
    """Nonempty S such that every x has either no element of S above it or a least one."""
    els = list(elements)
    out = []
    for S in subsets(els):
        if not S:
            continue
        ok = True
        for x in els:
            above = [s for s in S if x <= s]
            if above and not any(all(m <= s for s in above) for m in above):
                ok = False
                break
        if ok:
            out.append(S)
    return out


# valuations and distances ------------------------------------------------------

def upsets(elements, leq):
    els = list(elements)
    return [U for U in subsets(els) if all(y in U for x in U for y in els if leq(x, y))]


def bounded(elements, leq, x, y):
    return any(leq(x, z) and leq(y, z) for z in elements)


def _neg(elements, leq, x, mode):
    els = list(elements)
    if mode == "none":
        return frozenset()
    i_x = frozenset(y for y in els if not bounded(els, leq, x, y))
    if mode == "I":
        return i_x
    # finite case: the interior of an up-closed set is itself
    def i_of(z):
        return frozenset(y for y in els if not bounded(els, leq, z, y))
    return frozenset(y for y in els if x in i_of(y))


def distance(elements, leq, weights, x, y, mode):
    """(l, u) straight from the two defining sums."""
    els = list(elements)
    info = lambda z: frozenset(t for t in els if leq(t, z))
    mu = lambda s: sum((Fraction(weights[t]) for t in s), Fraction(0))
    nx, ny = _neg(els, leq, x, mode), _neg(els, leq, y, mode)
    u = 1 - mu(info(x) & info(y)) - mu(nx & ny)
    l = mu(info(x) & ny) + mu(info(y) & nx)
    return l, u


def random_weights(rng, elements, bottom, positive_bottom=False):
    els = list(elements)
    raw = {x: rng.randint(1, 9) for x in els}
    if not positive_bottom and len(els) > 1 and rng.random() < 0.5:
        raw[bottom] = 0
    total = sum(raw.values())
    return {x: Fraction(v, total) for x, v in raw.items()}


def relaxed_open_by_eps(points, u):
    """U open iff each x in U has some eps > 0 whose u-ball of radius u(x,x)+eps lies in U."""
    pts = list(points)
    vals = sorted({u(a, b) for a in pts for b in pts})
    gaps = [b - a for a, b in zip(vals, vals[1:])]
    eps = min(gaps) / 2 if gaps else Fraction(1)
    out = []
    for U in subsets(pts):
        ok = True
        for x in U:
            r = u(x, x) + eps
            if any(u(x, y) < r and y not in U for y in pts):
                ok = False
                break
        if ok:
            out.append(U)
    return out


def least_closed_tolerance(elements, leq):
    """Intersection of all reflexive symmetric relations whose complement is up-closed."""
    els = list(elements)
    pairs = [(a, b) for a in els for b in els]
    diag = {(a, a) for a in els}
    off = [(a, b) for i, a in enumerate(els) for b in els[i + 1:]]
    result = set(pairs)
    for choice in product((0, 1), repeat=len(off)):
        rel = set(diag)
        for c, (a, b) in zip(choice, off):
            if c:
                rel |= {(a, b), (b, a)}
        comp = [p for p in pairs if p not in rel]
        up_closed = all((a2, b2) not in rel for a, b in comp for a2 in els for b2 in els
                        if leq(a, a2) and leq(b, b2))
        if up_closed:
            result &= rel
    return frozenset(result)


# interval area valuation ---------------------------------------------------------

def box_union_area(boxes, lo, hi, eps1, eps2, eps, steps):
    """Exact measure of a union of boxes by counting grid cells.

    ``boxes`` are (a, b) with None for a missing constraint.  All finite
    endpoints must be multiples of (hi - lo) / steps.  Cells strictly above
    the diagonal count fully, diagonal cells count half.
    """
    h = Fraction(hi - lo, steps)

    def inside(box, x, y):
        a, b = box
        left = x >= lo if a is None else x > a
        right = y <= hi if b is None else y < b
        return left and right and x <= y

    area = Fraction(0)
    for i in range(steps):
        for j in range(i, steps):
            cx = lo + h * i + h / 4
            cy = lo + h * j + 3 * h / 4
            if any(inside(bx, cx, cy) for bx in boxes):
                area += h * h if j > i else h * h / 2
    left_len = Fraction(0)
    right_len = Fraction(0)
    for k in range(steps):
        y = lo + h * k + h / 2
        if any(bx[0] is None and inside(bx, Fraction(lo), y) for bx in boxes):
            left_len += h
        x = lo + h * k + h / 2
        if any(bx[1] is None and inside(bx, x, Fraction(hi)) for bx in boxes):
            right_len += h
    whole = any(bx == (None, None) for bx in boxes)
    return area + eps1 * left_len + eps2 * right_len + (eps if whole else 0)


def rng(seed):
    return random.Random(seed)


# the domain E, cut at depth n ----------------------------------------------

def e_truncation(n):
    """Compacts of E with index <= n: ('bot',0), ('zero',0), ('e',i), ('f',j).

    Weights follow the interleaved enumeration bot, 0_E, e1, f1, e2, f2, ...
    with w(bot)=0, w(0_E)=1/4 and 3/2^k at position k; the missing tail
    mass goes on bot.
    """
    els = [("bot", 0), ("zero", 0)] + [(t, i) for i in range(1, n + 1) for t in "ef"]

    def leq(x, y):
        (s, i), (t, j) = x, y
        if x == y or s == "bot":
            return True
        if s == "zero":
            return t == "f"
        if s == "e":
            return t in "ef" and i <= j
        return False

    pos = {("zero", 0): 2}
    for i in range(1, n + 1):
        pos["e", i] = 2 * i + 1
        pos["f", i] = 2 * i + 2
    w = {x: Fraction(3, 2 ** k) for x, k in pos.items()}
    w["zero", 0] = Fraction(1, 4)
    w["bot", 0] = 1 - sum(w.values())
    return els, leq, w
