"""Small helpers for token sets encoded as integer bitmasks."""


def bits(m):
    """Indices of set bits, lowest first."""
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def submasks(m):
    """All submasks of ``m`` (including 0 and ``m``), in increasing order."""
    out = []
    s = 0
    while True:
        out.append(s)
        if s == m:
            return out
        s = (s - m) & m


def mask_key(m):
    """Canonical ordering key: size first, then token positions."""
    return (m.bit_count(), tuple(bits(m)))


def downset_indicator(width):
    """Table d[m] = integer whose bit s is set for every submask s of m."""
    table = []
    for m in range(1 << width):
        acc = 0
        for s in submasks(m):
            acc |= 1 << s
        table.append(acc)
    return table
