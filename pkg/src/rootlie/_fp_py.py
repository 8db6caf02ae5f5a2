"""Pure-Python row reduction over F_p (fallback for the compiled kernel)."""


def rref(rows, ncols, p):
    """Reduced row echelon form of ``rows`` over F_p.

    Returns ``(nonzero_rows, pivot_columns)``; the input is not modified.
    """
    m = [[v % p for v in r] for r in rows]
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        row = m[r]
        inv = pow(row[c], p - 2, p)
        if inv != 1:
            row = [(v * inv) % p for v in row]
            m[r] = row
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    mi = m[i]
                    m[i] = [(a - f * b) % p for a, b in zip(mi, row)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows, ncols, p):
    return len(rref(rows, ncols, p)[1])
