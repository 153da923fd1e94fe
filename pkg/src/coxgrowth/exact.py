"""Small exact linear algebra over the rationals.

Matrices here are tiny (rank of a Coxeter diagram, a dozen at most), so
plain ``Fraction`` Gaussian elimination is both fast enough and free of
any tolerance questions.
"""
from fractions import Fraction
from math import gcd


def _to_fractions(a):
    return [[Fraction(int(x)) for x in row] for row in a]


def inertia(a):
    """Return ``(n_pos, n_neg, n_zero)`` of a symmetric integer matrix.

    Uses congruence diagonalisation (Sylvester's law of inertia), so the
    counts are exact.
    """
    m = _to_fractions(a)
    n = len(m)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if m[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active
                         if i != j and m[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # row_i += row_j, col_i += col_j; new diagonal is 2*m[i][j] != 0
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            piv = i
        d = m[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            f = m[i][piv] / d
            if f:
                for k in active:
                    m[i][k] -= f * m[piv][k]
        for i in active:
            m[i][piv] = m[piv][i] = Fraction(0)
    return pos, neg, n - pos - neg


def rref(a):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    m = [[x if isinstance(x, Fraction) else Fraction(int(x)) for x in row] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        lead = m[r][c]
        m[r] = [x / lead for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a):
    if len(a) == 0:
        return 0
    return len(rref(a)[1])


def nullspace(a):
    """Basis of the right kernel of ``a`` as lists of Fractions."""
    m, pivots = rref(a)
    cols = len(m[0]) if m else 0
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for row, pc in zip(m, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def primitive(v):
    """Scale a rational vector to a primitive integer vector (same direction)."""
    den = 1
    for x in v:
        x = Fraction(x)
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return [x // g for x in ints]


def solve(a, b):
    """Unique exact solution ``x`` of ``a x = b`` for a full-column-rank ``a``.

    ``a`` may be overdetermined; raises ``ValueError`` if the system is
    inconsistent or the columns are dependent.
    """
    aug = [[Fraction(int(x)) for x in row] + [Fraction(int(y))] for row, y in zip(a, b)]
    ncols = len(a[0])
    m, pivots = rref(aug)
    if ncols in pivots:
        raise ValueError("inconsistent linear system")
    if pivots != list(range(ncols)):
        raise ValueError("singular linear system")
    return [m[i][ncols] for i in range(ncols)]


def inverse(a):
    """Exact inverse of a square integer matrix, as Fractions."""
    n = len(a)
    aug = [[Fraction(int(x)) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a)]
    m, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in m]
