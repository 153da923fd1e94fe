"""Group elements as exact integer matrices on the root space.

Column ``j`` of an element's matrix is the image of the simple root
``alpha_j``. The geometric representation is faithful, so two elements are
equal exactly when their matrices are.

Matrices hold Python ints (``dtype=object``): entries of reflections deep in
the orbit outgrow int64.
"""
import numpy as np

from coxgrowth import exact
from coxgrowth.rootspace import RootError, form_image, pairing2


MAX_DESCENT_STEPS = 10**6


class ElementError(ValueError):
    pass


def _as_exact(m):
    a = np.array([[int(x) for x in row] for row in np.asarray(m)], dtype=object)
    a.flags.writeable = False
    return a


class Element:
    """Immutable group element; ``word`` optionally caches a generator word.

    ``word`` is a tuple of simple-generator indices whose product (left to
    right) is this element.
    """

    __slots__ = ("mat", "word", "_key")

    def __init__(self, mat, word=None):
        self.mat = mat if (isinstance(mat, np.ndarray) and mat.dtype == object
                           and not mat.flags.writeable) else _as_exact(mat)
        self.word = None if word is None else tuple(word)
        self._key = None

    @property
    def n(self):
        return self.mat.shape[0]

    @property
    def key(self):
        if self._key is None:
            self._key = tuple(int(x) for x in self.mat.flat)
        return self._key

    def __eq__(self, other):
        return isinstance(other, Element) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __matmul__(self, other):
        return multiply(self, other)

    def apply(self, v):
        """Image of a root vector (tuple of ints)."""
        return tuple(int(x) for x in self.mat.dot(np.array([int(c) for c in v], dtype=object)))

    def column(self, j):
        return tuple(int(x) for x in self.mat[:, j])

    def is_identity(self):
        n = self.n
        return all(self.mat[i, j] == (i == j) for i in range(n) for j in range(n))

    def to_json(self):
        out = {"matrix": [[str(int(x)) for x in row] for row in self.mat]}
        if self.word is not None:
            out["word"] = list(self.word)
        return out

    def __repr__(self):
        return f"Element({[list(map(int, r)) for r in self.mat]})"


def identity(d):
    return Element(np.eye(d.rank, dtype=np.int64), word=())


def generator(d, s):
    """Simple reflection ``s``: fixes everything orthogonal to ``alpha_s``."""
    i = d._idx(s)
    m = np.eye(d.rank, dtype=object)
    m[i, :] -= np.array([int(x) for x in d.gram2[i]], dtype=object)
    return Element(m, word=(i,))


def generators(d):
    return [generator(d, i) for i in range(d.rank)]


def evaluate_word(d, word):
    """Product of simple generators, left to right."""
    m = np.eye(d.rank, dtype=object)
    for i in word:
        m = _right_mult_simple(d, m, i)
    return Element(m, word=word)


def _right_mult_simple(d, m, i):
    """``m @ s_i`` as a column operation; ``m`` must be a writable object array."""
    m = np.array(m, dtype=object)
    col = m[:, i].copy()
    g = d.gram2[i]
    for j in range(m.shape[1]):
        if g[j]:
            m[:, j] = m[:, j] - int(g[j]) * col
    return m


def right_mult_simple(d, w, i):
    word = None if w.word is None else w.word + (i,)
    return Element(_right_mult_simple(d, w.mat, i), word=word)


def multiply(a, b):
    if a.n != b.n:
        raise ElementError(f"dimension mismatch: {a.n} vs {b.n}")
    word = a.word + b.word if a.word is not None and b.word is not None else None
    return Element(a.mat.dot(b.mat), word=word)


def inverse(a, d=None):
    """Inverse via word reversal when a word is cached, else exact linear algebra."""
    if a.word is not None and d is not None:
        return evaluate_word(d, tuple(reversed(a.word)))
    inv = exact.inverse(a.mat.tolist())
    if any(x.denominator != 1 for row in inv for x in row):
        raise ElementError("inverse is not integral: not a group element")
    return Element([[int(x) for x in row] for row in inv])


def power(a, k):
    out = np.eye(a.n, dtype=object)
    for _ in range(k):
        out = out.dot(a.mat)
    return Element(out)


def preserves_form(d, w):
    g = np.array([[int(x) for x in row] for row in d.gram2], dtype=object)
    return bool((w.mat.T.dot(g).dot(w.mat) == g).all())


def _negative_column(m, j):
    # columns are roots: all entries share a sign
    for x in m[:, j]:
        if x:
            return x < 0
    raise ElementError("zero column: not a group element")


def is_descent(w, j):
    """True when ``l(w s_j) < l(w)``, i.e. ``w(alpha_j)`` is negative."""
    return _negative_column(w.mat, j)


def length_and_word(d, w, check=True):
    """Length of ``w`` and its canonical reduced word.

    Strips the smallest-index right descent until the identity is reached.
    """
    if check and not preserves_form(d, w):
        raise ElementError("not a group element: matrix does not preserve the form")
    m = np.array(w.mat, dtype=object)
    stripped = []
    n = d.rank
    while True:
        j = next((j for j in range(n) if _negative_column(m, j)), None)
        if j is None:
            break
        m = _right_mult_simple(d, m, j)
        stripped.append(j)
        if len(stripped) > MAX_DESCENT_STEPS:
            raise ElementError("descent does not terminate: not a group element")
    if not all(m[i, j] == (i == j) for i in range(n) for j in range(n)):
        raise ElementError("not a group element: descent ended away from the identity")
    return len(stripped), tuple(reversed(stripped))


def length(d, w, check=True):
    return length_and_word(d, w, check=check)[0]


def reflection_from_root(d, beta):
    """Matrix of the reflection in the unit positive root ``beta``."""
    beta = tuple(int(x) for x in beta)
    if pairing2(d, beta, beta) != 2:
        raise RootError(f"{beta} is not a unit root")
    if not any(beta) or any(x < 0 for x in beta):
        raise RootError(f"{beta} is not positive")
    gb = form_image(d, beta)
    n = d.rank
    m = np.eye(n, dtype=object)
    for i in range(n):
        if beta[i]:
            for j in range(n):
                if gb[j]:
                    m[i, j] -= beta[i] * gb[j]
    return Element(m)


def is_involution(w):
    sq = w.mat.dot(w.mat)
    n = w.n
    return all(sq[i, j] == (i == j) for i in range(n) for j in range(n))


def root_from_reflection(d, t):
    """Positive root of a reflection, recovered from its (-1)-eigenspace."""
    if t.is_identity():
        raise ElementError("identity is not a reflection")
    if not is_involution(t):
        raise ElementError("not a reflection: element is not an involution")
    n = d.rank
    diff = np.eye(n, dtype=object) - t.mat
    if exact.rank(diff.tolist()) != 1:
        raise ElementError("not a reflection: fixed space is not a hyperplane")
    col = next(j for j in range(n) if any(diff[:, j]))
    beta = exact.primitive([int(x) for x in diff[:, col]])
    if beta[next(i for i, x in enumerate(beta) if x)] < 0:
        beta = [-x for x in beta]
    beta = tuple(beta)
    if any(x < 0 for x in beta):
        raise ElementError("not a reflection: eigenvector has mixed signs")
    if pairing2(d, beta, beta) != 2 or reflection_from_root(d, beta) != t:
        raise ElementError("not a reflection: round trip through the root failed")
    return beta


def is_reflection(d, t):
    try:
        root_from_reflection(d, t)
    except (ElementError, RootError):
        return False
    return True


def min_coset_rep_matrix(d, w, J):
    """Strip right descents in ``J`` (smallest index first); no checks."""
    m = np.array(w.mat, dtype=object)
    J = sorted(J)
    while True:
        j = next((j for j in J if _negative_column(m, j)), None)
        if j is None:
            return Element(m)
        m = _right_mult_simple(d, m, j)


def in_parabolic(d, w, J):
    """Whether ``w`` lies in the parabolic subgroup ``W_J``."""
    return min_coset_rep_matrix(d, w, d.indices(J)).is_identity()


def min_coset_rep(d, w, J, check=True):
    """Minimal length element of the left coset ``w W_J``."""
    J = d.indices(J)
    rep = min_coset_rep_matrix(d, w, J)
    if check:
        lw = length(d, w)
        lrep = length(d, rep)
        tail = multiply(inverse(rep), w)
        ltail = length(d, tail, check=False)
        # w = rep * tail with lengths adding and tail in W_J
        assert lw == lrep + ltail, "length additivity of the parabolic factorisation failed"
        assert min_coset_rep_matrix(d, tail, J).is_identity(), "cofactor escaped W_J"
    return rep


def distinct_cosets(d, ts, J):
    """Whether the reflections ``ts`` (outside ``W_J``) sit in distinct left cosets.

    Returns ``(True, None)`` or ``(False, (i, j))`` naming a colliding pair.
    """
    J = d.indices(J)
    seen_t = {}
    reps = {}
    for k, t in enumerate(ts):
        if t in seen_t:
            raise ElementError(f"reflections {seen_t[t]} and {k} coincide")
        seen_t[t] = k
        rep = min_coset_rep(d, t, J, check=False)
        if rep.is_identity():
            raise ElementError(f"reflection {k} lies in W_J")
        if rep in reps:
            return False, (reps[rep], k)
        reps[rep] = k
    return True, None
