"""Independent reference computations used by the tests.

Nothing here imports the polytope engine: linear algebra is a small
Fraction elimination written from scratch so the oracle and the code
under test share no routine.
"""
from fractions import Fraction
from itertools import combinations


def solve_square(M, rhs):
    """Unique solution of ``M x = rhs`` over the rationals, or None if singular."""
    n = len(M)
    aug = [[Fraction(v) for v in row] + [Fraction(r)] for row, r in zip(M, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return tuple(row[n] for row in aug)


def rank(rows, ncols):
    m = [[Fraction(v) for v in row] for row in rows]
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            if m[i][col] != 0:
                f = m[i][col] / m[r][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def _null_direction(rows, n):
    """A nonzero y with ``rows y = 0`` when the rows have rank n - 1."""
    for k in range(n):
        # fix y_k = 1 and solve the remaining square system if possible
        for sub in combinations(range(len(rows)), n - 1):
            M = [[rows[i][c] for c in range(n) if c != k] for i in sub]
            rhs = [-rows[i][k] for i in sub]
            sol = solve_square(M, rhs)
            if sol is None:
                continue
            y = list(sol[:k]) + [Fraction(1)] + list(sol[k:])
            if all(sum(Fraction(a) * v for a, v in zip(r, y)) == 0 for r in rows):
                return y
    return None


def brute_force_vertices(A, b):
    """Vertices of ``{x : A x >= b}`` by trying every square tight subsystem.

    Returns ``(status, vertices)`` with status "bounded", "infeasible" or
    "unbounded". Assumes ``A`` has full column rank (the generator below
    guarantees it), so the polyhedron is pointed: it is empty exactly when
    it has no vertex and unbounded exactly when some extreme ray exists.
    """
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    m, n = len(A), len(A[0])
    verts = set()
    for sub in combinations(range(m), n):
        x = solve_square([A[i] for i in sub], [b[i] for i in sub])
        if x is None:
            continue
        if all(sum(a * v for a, v in zip(A[i], x)) >= b[i] for i in range(m)):
            verts.add(x)
    if not verts:
        return "infeasible", []
    for sub in combinations(range(m), n - 1):
        rows = [A[i] for i in sub]
        if rank(rows, n) != n - 1:
            continue
        y = _null_direction(rows, n)
        for s in (1, -1):
            yy = [s * v for v in y]
            if all(sum(a * v for a, v in zip(row, yy)) >= 0 for row in A):
                return "unbounded", sorted(verts)
    return "bounded", sorted(verts)


def random_h_system(rng, max_dim=4, max_rows=10, coef=3):
    """Random integer system with full column rank; about half get a bounding box."""
    while True:
        n = int(rng.integers(1, max_dim + 1))
        boxed = rng.random() < 0.5 and 2 * n < max_rows
        m = int(rng.integers(n + 1, max_rows + 1)) if not boxed else int(rng.integers(2 * n + 1, max_rows + 1))
        extra = m - 2 * n if boxed else m
        A = rng.integers(-coef, coef + 1, size=(extra, n)).tolist()
        b = rng.integers(-coef, coef + 1, size=extra).tolist()
        if boxed:
            for k in range(n):
                e = [0] * n
                e[k] = 1
                A += [e, [-v for v in e]]
                b += [-coef, -coef]
        if any(not any(row) for row in A):
            continue
        if rank(A, n) == n:
            return A, b
