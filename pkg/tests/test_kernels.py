import os
import subprocess
import sys

import numpy as np
import pytest

from coxgrowth import kernels
from coxgrowth.growth import coxeter_layers, parabolic_layers
from conftest import star

K15 = star(5)
G2 = np.ascontiguousarray(K15.gram2, dtype=np.int64)


def sort_stack(a):
    return kernels.unique_matrices(a)[0]


@pytest.fixture(scope="module")
def layer():
    out = None
    for _, lay in coxeter_layers(K15, 5):
        out = lay
    return out


def test_expand_right_backends_agree(layer):
    allowed = np.arange(6, dtype=np.int64)
    a = kernels.expand_right_jit(layer, G2, allowed)
    b = kernels.expand_right_np(layer, G2, allowed)
    assert a.shape == b.shape
    assert (sort_stack(a) == sort_stack(b)).all()


def test_expand_left_backends_agree():
    J = (0, 1, 2, 3, 4)
    jmask = np.zeros(6, dtype=np.bool_)
    jmask[list(J)] = True
    gen = parabolic_layers(K15, J, 6)
    lay = None
    for _, lay in gen:
        pass
    inv = np.stack([np.array(np.linalg.inv(m.astype(float)).round(), dtype=np.int64) for m in lay])
    a, ai = kernels.expand_left_jit(lay, inv, G2, jmask)
    b, bi = kernels.expand_left_np(lay, inv, G2, jmask)
    ka, kb = kernels.matrix_keys(a), kernels.matrix_keys(b)
    oa, ob = np.argsort(ka), np.argsort(kb)
    assert (a[oa] == b[ob]).all() and (ai[oa] == bi[ob]).all()
    for m, mi in zip(a, ai):
        assert (m @ mi == np.eye(6, dtype=np.int64)).all()


def test_right_matmul_and_positivity_agree(layer):
    gens = np.stack([np.eye(6, dtype=np.int64) - np.outer(np.eye(6, dtype=np.int64)[i], G2[i])
                     for i in range(6)])
    assert (kernels.right_matmul_jit(layer, gens) == kernels.right_matmul_np(layer, gens)).all()
    vecs = np.array([[1, 0, 0, 0, 0, 0], [2, 1, 1, 1, 1, 0]], dtype=np.int64)
    assert (kernels.images_positive_jit(layer, vecs) == kernels.images_positive_np(layer, vecs)).all()


def test_unique_and_bound():
    a = np.zeros((3, 2, 2), dtype=np.int64)
    a[1, 0, 0] = 1
    u, idx = kernels.unique_matrices(a)
    assert u.shape[0] == 2 and sorted(idx.tolist()) in ([0, 1], [1, 2])
    with pytest.raises(kernels.KernelOverflow):
        kernels.check_bound(np.full((1, 2, 2), 2**41, dtype=np.int64))


def test_env_flag_selects_numpy():
    code = "from coxgrowth import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, COXGROWTH_DISABLE_JIT="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
    code = ("from coxgrowth.growth import enumerate_ball; from coxgrowth.diagram import parse_diagram;"
            "print(enumerate_ball(parse_diagram('a b inf\\nb c inf\\na c inf'), max_len=8).counts)")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == str([1] + [3 * 2**(k - 1) for k in range(1, 9)])
