"""Layer-expansion kernels for Cayley-graph enumeration.

Every kernel exists twice: a compiled loop version (``*_jit``) and a
broadcasting numpy version (``*_np``). The public names dispatch on
``coxgrowth._jit.JIT_ENABLED``. Arrays are int64 stacks of shape
``(m, n, n)``; callers guard against overflow with :func:`check_bound`.
"""
import numpy as np

from coxgrowth._jit import JIT_ENABLED, njit

# entries stay below this so one more step with |gram2| <= 2 (or a bounded
# generator) cannot overflow int64
SAFE_BOUND = 2**40


class KernelOverflow(OverflowError):
    pass


def check_bound(arr, bound=SAFE_BOUND):
    if arr.size and np.abs(arr).max() >= bound:
        raise KernelOverflow(
            "matrix entries left the int64-safe range; lower max_len or use the exact Element API")


# ---------------------------------------------------------------- right multiplication


@njit(cache=True)
def _first_sign(m, col):
    n = m.shape[0]
    for i in range(n):
        if m[i, col] != 0:
            return 1 if m[i, col] > 0 else -1
    return 0


@njit(cache=True)
def expand_right_jit(layer, g2, allowed):
    """Children ``w s`` with ``l(w s) = l(w) + 1`` for ``s`` in ``allowed``."""
    m, n = layer.shape[0], layer.shape[1]
    count = 0
    for a in range(m):
        for s in allowed:
            if _first_sign(layer[a], s) > 0:
                count += 1
    out = np.empty((count, n, n), dtype=np.int64)
    c = 0
    for a in range(m):
        w = layer[a]
        for s in allowed:
            if _first_sign(w, s) > 0:
                for i in range(n):
                    ws = w[i, s]
                    for j in range(n):
                        out[c, i, j] = w[i, j] - g2[s, j] * ws
                c += 1
    return out


def expand_right_np(layer, g2, allowed):
    parts = []
    for s in allowed:
        col = layer[:, :, s]
        pos = (col > 0).any(axis=1)
        par = layer[pos]
        parts.append(par - par[:, :, s, None] * g2[s][None, None, :])
    if not parts:
        return np.empty((0,) + layer.shape[1:], dtype=np.int64)
    return np.concatenate(parts)


# ---------------------------------------------------------------- left multiplication


@njit(cache=True)
def expand_left_jit(layer, inv, g2, jmask):
    """Children ``s w`` with ``l(s w) = l(w) + 1`` that still have no right descent in J.

    ``inv`` holds the inverses, needed for the length test
    ``l(s w) > l(w) <=> w^{-1}(alpha_s) > 0``.
    """
    m, n = layer.shape[0], layer.shape[1]
    rows = np.empty(n, dtype=np.int64)
    keep = np.zeros((m, n), dtype=np.bool_)
    count = 0
    for a in range(m):
        w = layer[a]
        for s in range(n):
            if _first_sign(inv[a], s) <= 0:
                continue
            ok = True
            for j in range(n):
                if not jmask[j]:
                    continue
                # column j of s*w differs from w only in row s
                v = w[s, j]
                for t in range(n):
                    v -= g2[s, t] * w[t, j]
                first = 0
                for i in range(n):
                    x = v if i == s else w[i, j]
                    if x != 0:
                        first = 1 if x > 0 else -1
                        break
                if first < 0:
                    ok = False
                    break
            if ok:
                keep[a, s] = True
                count += 1
    out = np.empty((count, n, n), dtype=np.int64)
    out_inv = np.empty((count, n, n), dtype=np.int64)
    c = 0
    for a in range(m):
        w = layer[a]
        wi = inv[a]
        for s in range(n):
            if not keep[a, s]:
                continue
            for j in range(n):
                v = w[s, j]
                for t in range(n):
                    v -= g2[s, t] * w[t, j]
                rows[j] = v
            for i in range(n):
                for j in range(n):
                    out[c, i, j] = rows[j] if i == s else w[i, j]
                ws = wi[i, s]
                for j in range(n):
                    out_inv[c, i, j] = wi[i, j] - g2[s, j] * ws
            c += 1
    return out, out_inv


def _first_sign_np(cols):
    """Sign of the first nonzero entry along axis 1 of a ``(m, n)`` stack."""
    nz = cols != 0
    first = nz.argmax(axis=1)
    return np.sign(cols[np.arange(cols.shape[0]), first])


def expand_left_np(layer, inv, g2, jmask):
    outs, invs = [], []
    jcols = np.flatnonzero(jmask)
    for s in range(layer.shape[1]):
        longer = _first_sign_np(inv[:, :, s]) > 0
        w = layer[longer]
        wi = inv[longer]
        child = w.copy()
        child[:, s, :] = w[:, s, :] - np.einsum("t,mtj->mj", g2[s], w)
        ok = np.ones(child.shape[0], dtype=bool)
        for j in jcols:
            ok &= _first_sign_np(child[:, :, j]) > 0
        outs.append(child[ok])
        invs.append(wi[ok] - wi[ok][:, :, s, None] * g2[s][None, None, :])
    return np.concatenate(outs), np.concatenate(invs)


# ---------------------------------------------------------------- general generators


@njit(cache=True)
def right_matmul_jit(layer, gens):
    m, n = layer.shape[0], layer.shape[1]
    k = gens.shape[0]
    out = np.zeros((m * k, n, n), dtype=np.int64)
    for a in range(m):
        for g in range(k):
            c = a * k + g
            for i in range(n):
                for t in range(n):
                    x = layer[a, i, t]
                    if x != 0:
                        for j in range(n):
                            out[c, i, j] += x * gens[g, t, j]
    return out


def right_matmul_np(layer, gens):
    out = np.einsum("mit,gtj->mgij", layer, gens)
    return out.reshape((-1,) + layer.shape[1:])


@njit(cache=True)
def images_positive_jit(layer, vecs):
    """Mask of elements ``w`` with every ``w(v)`` a positive vector."""
    m, n = layer.shape[0], layer.shape[1]
    mask = np.ones(m, dtype=np.bool_)
    for a in range(m):
        for v in range(vecs.shape[0]):
            sign = 0
            for i in range(n):
                x = 0
                for j in range(n):
                    x += layer[a, i, j] * vecs[v, j]
                if x != 0:
                    sign = 1 if x > 0 else -1
                    break
            if sign <= 0:
                mask[a] = False
                break
    return mask


def images_positive_np(layer, vecs):
    if vecs.shape[0] == 0:
        return np.ones(layer.shape[0], dtype=bool)
    img = np.einsum("mij,vj->mvi", layer, vecs)
    nz = img != 0
    first = nz.argmax(axis=2)
    signs = np.take_along_axis(img, first[:, :, None], axis=2)[:, :, 0]
    return (signs > 0).all(axis=1)


# ---------------------------------------------------------------- dedup


def matrix_keys(arr):
    """One opaque void scalar per matrix, usable with ``np.unique``/``np.isin``."""
    flat = np.ascontiguousarray(arr.reshape(arr.shape[0], -1))
    return flat.view(np.dtype((np.void, flat.dtype.itemsize * flat.shape[1]))).ravel()


def unique_matrices(arr):
    """Deduplicated stack, sorted by key; also returns the kept indices."""
    if arr.shape[0] == 0:
        return arr, np.empty(0, dtype=np.int64)
    _, idx = np.unique(matrix_keys(arr), return_index=True)
    return arr[idx], idx


if JIT_ENABLED:
    expand_right = expand_right_jit
    expand_left = expand_left_jit
    right_matmul = right_matmul_jit
    images_positive = images_positive_jit
else:
    expand_right = expand_right_np
    expand_left = expand_left_np
    right_matmul = right_matmul_np
    images_positive = images_positive_np

BACKEND = "numba" if JIT_ENABLED else "numpy"
