"""The vertical segment [0,1] ordered by <=, with two valuations on its opens.

Opens are (x,1] for 0 <= x <= 1 (the empty set at x = 1) and the whole
segment.  ``None`` stands for the whole segment.
"""

from fractions import Fraction

ONE = Fraction(1)


class VerticalValuations:
    def __init__(self, eps=Fraction(1, 10)):
        self.eps = Fraction(eps)
        if self.eps <= 0:
            raise ValueError("eps must be positive")

    def mu(self, x):
        """Unnormalized: 1 - x on (x,1], 1 + eps on the whole segment."""
        return ONE + self.eps if x is None else ONE - Fraction(x)

    def mu_prime(self, x):
        return self.mu(x) / (ONE + self.eps)

    def mu_second(self, x):
        return ONE if x is None else ONE - Fraction(x)

    def u_prime(self, x, y):
        x, y = Fraction(x), Fraction(y)
        if x == 0 or y == 0:
            return ONE
        return (ONE - min(x, y)) / (ONE + self.eps)

    def u_second(self, x, y):
        return ONE - min(Fraction(x), Fraction(y))


def vertical_valuations(eps=Fraction(1, 10)):
    return VerticalValuations(eps)


def opens(grid):
    """Opens (x,1] for x on the grid, plus the whole segment, as (key, member test)."""
    out = [(None, lambda t: True)]
    out += [(x, (lambda x: lambda t: t > x)(x)) for x in grid]
    return out


def strongly_nondegenerate(valuation, grid) -> bool:
    """U strictly inside V implies valuation(U) < valuation(V), over the grid opens."""
    keys = [None] + sorted(set(Fraction(x) for x in grid))
    vals = {k: valuation(k) for k in keys}

    def subset(k1, k2):
        if k2 is None:
            return True
        return k1 is not None and k1 >= k2

    def strictly(k1, k2):
        # (x,1] strictly inside the whole segment even at x = 0
        return subset(k1, k2) and k1 != k2

    return all(vals[a] < vals[b] for a in keys for b in keys if strictly(a, b))


def nondegeneracy_witness():
    """(0,1] is strictly inside [0,1] yet mu'' gives both 1."""
    return Fraction(0), None
