"""Independent brute-force oracles used to freeze expected test values.

Everything here is deliberately naive and shares no code with the package:
a textbook Gaussian elimination over Fraction/ints-mod-p, a breadth-first
path enumerator, and a naturality-equation counter.  Derived expectations
in the tests come from these, not from the code under test.
"""

from fractions import Fraction


def gf_inv(a, p):
    return pow(a % p, p - 2, p)


def dumb_rref(rows, p=None):
    """(rank, rref rows, pivot columns) by plain Gaussian elimination."""
    rows = [[Fraction(x) if p is None else x % p for x in r] for r in rows]
    if not rows:
        return 0, rows, []
    ncols = len(rows[0])
    rank = 0
    pivots = []
    for c in range(ncols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][c]:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = (1 / rows[rank][c]) if p is None else gf_inv(rows[rank][c], p)
        rows[rank] = [x * inv if p is None else (x * inv) % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                factor = rows[r][c]
                if p is None:
                    rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
                else:
                    rows[r] = [(a - factor * b) % p for a, b in zip(rows[r], rows[rank])]
        pivots.append(c)
        rank += 1
        if rank == len(rows):
            break
    return rank, rows, pivots


def dumb_rank(rows, p=None):
    return dumb_rref(rows, p)[0]


def brute_paths(arrows, start, max_len):
    """All paths (tuples of arrow names) from start, grouped by endpoint."""
    out = {start: [()]}
    frontier = [((), start)]
    for _ in range(max_len):
        nxt = []
        for path, end in frontier:
            for name, src, tgt in arrows:
                if src == end:
                    p = path + (name,)
                    out.setdefault(tgt, []).append(p)
                    nxt.append((p, tgt))
        frontier = nxt
    return out


def naturality_hom_dim(vertices, arrows, m_dims, m_mats, n_dims, n_mats, p=None):
    """dim Hom(M, N) by counting solutions of all naturality squares.

    Matrices are lists of lists; the matrix of an arrow x -> y has shape
    dims(x) x dims(y) and acts M(y) -> M(x) on columns.
    """
    offsets = {}
    total = 0
    for v in vertices:
        offsets[v] = total
        total += n_dims[v] * m_dims[v]
    rows = []
    for name, x, y in arrows:
        ma = m_mats[name]
        na = n_mats[name]
        for i in range(n_dims[x]):
            for j in range(m_dims[y]):
                row = [0] * total
                for k in range(m_dims[x]):
                    row[offsets[x] + i * m_dims[x] + k] += ma[k][j]
                for l in range(n_dims[y]):
                    row[offsets[y] + l * m_dims[y] + j] -= na[i][l]
                rows.append(row)
    if not rows:
        return total
    return total - dumb_rank(rows, p)
