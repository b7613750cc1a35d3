"""Exact integer linear algebra: Smith normal form, kernels and linear solves.

Matrices are plain lists of rows of Python ints (arbitrary precision).  All
functions copy their inputs; nothing is modified in place.
"""

from math import gcd


def _rect(m, ncols=None):
    rows = [list(map(int, r)) for r in m]
    if rows:
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
        if ncols is not None and ncols != width:
            raise ValueError(f"expected {ncols} columns, got {width}")
    else:
        width = ncols or 0
    return rows, width


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(r, c):
    return [[0] * c for _ in range(r)]


def matmul(a, b):
    a, _ = _rect(a)
    b, bc = _rect(b)
    bt = list(zip(*b)) if b else [()] * bc
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a, x):
    return [sum(c * xi for c, xi in zip(row, x)) for row in a]


def transpose(m, ncols=None):
    rows, width = _rect(m, ncols)
    return [[rows[i][j] for i in range(len(rows))] for j in range(width)]


def det(m):
    """Determinant by fraction-free (Bareiss) elimination."""
    a, n = _rect(m)
    if len(a) != n:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def is_unimodular(m):
    return abs(det(m)) == 1


def _smallest_nonzero(a, s, rows, cols):
    best = None
    for i in range(s, rows):
        row = a[i]
        for j in range(s, cols):
            v = row[j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
                if best[0] == 1:
                    return best
    return best


def _diagonalize(a, rows, cols, left=None, right=None):
    """Reduce ``a`` in place to Smith form, recording row ops in ``left`` and
    column ops in ``right`` when given."""

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            if left is not None:
                left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            if right is not None:
                for row in right:
                    row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        rd, rs = a[dst], a[src]
        for j in range(cols):
            if rs[j]:
                rd[j] += q * rs[j]
        if left is not None:
            ld, ls = left[dst], left[src]
            for j in range(len(ld)):
                if ls[j]:
                    ld[j] += q * ls[j]

    def add_col(dst, src, q):
        for row in a:
            if row[src]:
                row[dst] += q * row[src]
        if right is not None:
            for row in right:
                if row[src]:
                    row[dst] += q * row[src]

    factors = []
    for s in range(min(rows, cols)):
        found = _smallest_nonzero(a, s, rows, cols)
        if found is None:
            break
        _, i0, j0 = found
        swap_rows(s, i0)
        swap_cols(s, j0)
        while True:
            dirty = False
            p = a[s][s]
            for i in range(s + 1, rows):
                if a[i][s]:
                    add_row(i, s, -(a[i][s] // p))
                    if a[i][s]:
                        dirty = True
            for j in range(s + 1, cols):
                if a[s][j]:
                    add_col(j, s, -(a[s][j] // p))
                    if a[s][j]:
                        dirty = True
            if dirty:
                # a remainder is now smaller than the pivot; move it in
                best = None
                for i in range(s, rows):
                    if a[i][s] and (best is None or abs(a[i][s]) < best[0]):
                        best = (abs(a[i][s]), i, s)
                for j in range(s, cols):
                    if a[s][j] and abs(a[s][j]) < best[0]:
                        best = (abs(a[s][j]), s, j)
                swap_rows(s, best[1])
                swap_cols(s, best[2])
                continue
            bad = next(
                (i for i in range(s + 1, rows) if any(a[i][j] % p for j in range(s + 1, cols))),
                None,
            )
            if bad is None:
                break
            add_row(s, bad, 1)
        if a[s][s] < 0:
            a[s] = [-x for x in a[s]]
            if left is not None:
                left[s] = [-x for x in left[s]]
        factors.append(a[s][s])
    return factors


def snf(m, ncols=None):
    """Smith normal form.

    Returns ``(factors, left, right)`` with ``left @ m @ right`` diagonal,
    carrying ``factors`` (positive, each dividing the next) followed by zeros,
    and ``left``/``right`` unimodular.
    """
    a, cols = _rect(m, ncols)
    rows = len(a)
    left, right = identity(rows), identity(cols)
    factors = _diagonalize(a, rows, cols, left, right)
    return factors, left, right


def _chain(diag):
    """Turn a list of positive diagonal entries into invariant factors."""
    units = [d for d in diag if d == 1]
    d = sorted(x for x in diag if x != 1)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            d[i], d[j] = g, d[i] * d[j] // g
    return units + d


def smith_factors(m, ncols=None):
    """Invariant factors only (no transforms)."""
    a, cols = _rect(m, ncols)
    entries = {(i, j): v for i, row in enumerate(a) for j, v in enumerate(row) if v}
    return sparse_smith_factors(entries)


def sparse_smith_factors(entries):
    """Invariant factors of the matrix given as ``{(row, col): value}``.

    The matrix is split into blocks along the connected components of its
    row/column incidence graph before elimination; boundary matrices of
    tensor complexes are extremely block-diagonal.
    """
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (i, j), v in entries.items():
        if v:
            ri, rj = find(("r", i)), find(("c", j))
            if ri != rj:
                parent[ri] = rj
    blocks = {}
    for (i, j), v in entries.items():
        if v:
            blocks.setdefault(find(("r", i)), []).append((i, j, v))
    diag = []
    for block in blocks.values():
        rows, cols = {}, {}
        for i, j, _ in block:
            rows.setdefault(i, len(rows))
            cols.setdefault(j, len(cols))
        sub = zeros(len(rows), len(cols))
        for i, j, v in block:
            sub[rows[i]][cols[j]] = v
        diag.extend(_diagonalize(sub, len(rows), len(cols)))
    return _chain(diag)


def rank(m, ncols=None):
    return len(smith_factors(m, ncols))


def kernel_basis(m, ncols=None):
    """A free basis of the integer kernel ``{x : m x = 0}``, as column vectors."""
    factors, _, right = snf(m, ncols)
    cols = len(right)
    return [[right[i][j] for i in range(cols)] for j in range(len(factors), cols)]


def solve_linear(m, b, ncols=None):
    """An integer solution of ``m x = b``, or ``None`` if there is none."""
    a, cols = _rect(m, ncols)
    if len(b) != len(a):
        raise ValueError(f"right-hand side has length {len(b)}, matrix has {len(a)} rows")
    factors, left, right = snf(a, cols)
    c = matvec(left, b)
    y = [0] * cols
    for i, d in enumerate(factors):
        q, r = divmod(c[i], d)
        if r:
            return None
        y[i] = q
    if any(c[len(factors):]):
        return None
    return matvec(right, y)
