"""Pure-Python integer row-reduction kernels.

Reference twin of the compiled ``_kernels`` extension; same signatures, same
results.  All arithmetic is on Python ints, so it never overflows.
"""

from math import gcd

BACKEND = "python"


def _primitive(row):
    g = gcd(*row)
    if g > 1:
        return [x // g for x in row]
    return row


def rref(a):
    """Fraction-free Gauss-Jordan elimination of an integer matrix.

    Returns ``(rows, pivots)``: the nonzero rows, each primitive with a positive
    pivot entry and zeros in every other row's pivot column.  Dividing each row
    by its pivot gives the reduced row-echelon form.
    """
    rows = [_primitive([int(x) for x in r]) for r in a]
    rows = [r for r in rows if any(r)]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    rank = 0
    for c in range(ncols):
        best = -1
        for i in range(rank, len(rows)):
            v = rows[i][c]
            if v and (best < 0 or abs(v) < abs(rows[best][c])):
                best = i
        if best < 0:
            continue
        rows[rank], rows[best] = rows[best], rows[rank]
        prow = rows[rank]
        if prow[c] < 0:
            prow = [-x for x in prow]
            rows[rank] = prow
        p = prow[c]
        for i in range(len(rows)):
            if i == rank:
                continue
            f = rows[i][c]
            if f:
                rows[i] = _primitive([p * x - f * y for x, y in zip(rows[i], prow)])
        pivots.append(c)
        rank += 1
        if rank == len(rows):
            break
    return rows[:rank], pivots


def _insert(basis, pivots, v):
    for row, pc in zip(basis, pivots):
        f = v[pc]
        if f:
            p = row[pc]
            v = [p * x - f * y for x, y in zip(v, row)]
    if not any(v):
        return False
    v = _primitive(v)
    pc = next(i for i, x in enumerate(v) if x)
    if v[pc] < 0:
        v = [-x for x in v]
    basis.append(v)
    pivots.append(pc)
    return True


def spin(gens, seed):
    """Smallest subspace containing ``seed`` and stable under every generator.

    ``gens`` is a sequence of square integer matrices, ``seed`` an integer
    vector.  Returns a semi-echelon integer basis (list of rows).
    """
    n = len(seed)
    # column-sparse form: cols[k] lists (row, entry) for the nonzeros of column k
    mats = []
    for g in gens:
        g = [list(map(int, r)) for r in g]
        mats.append([[(r, g[r][k]) for r in range(n) if g[r][k]] for k in range(n)])
    basis, pivots = [], []
    _insert(basis, pivots, [int(x) for x in seed])
    i = 0
    while i < len(basis) and len(basis) < n:
        v = basis[i]
        nz = [(k, x) for k, x in enumerate(v) if x]
        for cols in mats:
            w = [0] * n
            for k, x in nz:
                for r, gk in cols[k]:
                    w[r] += gk * x
            _insert(basis, pivots, w)
            if len(basis) == n:
                break
        i += 1
    return basis


def spin_rank_mod(gens, seed, p):
    """Dimension over GF(p) of the spinning closure of ``seed`` mod ``p``.

    Full rank mod p certifies full rank over the rationals: the spun integer
    vectors reduce to a basis mod p, so their integer determinant is nonzero.
    """
    n = len(seed)
    mats = []
    for g in gens:
        g = [[int(x) % p for x in r] for r in g]
        mats.append([[(r, g[r][k]) for r in range(n) if g[r][k]] for k in range(n)])
    basis, pivots = [], []

    def insert(v):
        for row, pc in zip(basis, pivots):
            f = v[pc]
            if f:
                v = [(x - f * y) % p for x, y in zip(v, row)]
        pc = next((i for i, x in enumerate(v) if x), -1)
        if pc < 0:
            return
        inv = pow(v[pc], p - 2, p)
        basis.append([x * inv % p for x in v])
        pivots.append(pc)

    insert([int(x) % p for x in seed])
    i = 0
    while i < len(basis) and len(basis) < n:
        nz = [(k, x) for k, x in enumerate(basis[i]) if x]
        for cols in mats:
            w = [0] * n
            for k, x in nz:
                for r, gk in cols[k]:
                    w[r] += gk * x
            insert([x % p for x in w])
            if len(basis) == n:
                break
        i += 1
    return len(basis)
