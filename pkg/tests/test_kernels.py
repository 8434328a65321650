import os

import numpy as np
import pytest

from qpe_surgery import kernels
from qpe_surgery.kernels import available_backends, get_backend

BACKENDS = sorted(available_backends())


def test_compiled_backend_is_default_when_built():
    assert kernels.BACKEND in BACKENDS
    forced = os.environ.get("QPE_SURGERY_KERNELS", "").lower() == "python"
    assert kernels.BACKEND == ("cython" if "cython" in BACKENDS and not forced else "python")
    with pytest.raises(ValueError):
        get_backend("fortran")


@pytest.mark.parametrize("name", BACKENDS)
def test_ring_mul_matches_complex(name):
    k = get_backend(name)
    rng = np.random.default_rng(0)
    w = np.exp(1j * np.pi / 4 * np.arange(4))
    a = rng.integers(-9, 9, size=(50, 4))
    b = rng.integers(-9, 9, size=(50, 4))
    got = np.asarray(k.ring_mul(a, b)) @ w
    assert np.allclose(got, (a @ w) * (b @ w))


@pytest.mark.parametrize("name", BACKENDS)
def test_matmul_and_reduce_agree_with_reference(name):
    k, ref = get_backend(name), get_backend("python")
    rng = np.random.default_rng(1)
    m = rng.integers(-20, 20, size=(200, 2, 2, 4)).astype(np.int64)
    g = rng.integers(-3, 3, size=(2, 2, 4)).astype(np.int64)
    km = np.zeros(200, dtype=np.int64)
    a = k.ring_matmul_fixed(m.copy(), km.copy(), g, 1)
    b = ref.ring_matmul_fixed(m.copy(), km.copy(), g, 1)
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


@pytest.mark.parametrize("name", BACKENDS)
def test_statevector_kernels(name):
    k = get_backend(name)
    rng = np.random.default_rng(2)
    n = 4
    psi = rng.normal(size=16) + 1j * rng.normal(size=16)
    u = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))[0]
    for q in range(n):
        full = np.kron(np.kron(np.eye(2 ** q), u), np.eye(2 ** (n - 1 - q)))
        assert np.allclose(k.apply_1q(psi.copy(), n, q, u), full @ psi)
    for c in range(n):
        for t in range(n):
            if c == t:
                continue
            expect = psi.copy()
            for i in range(16):
                if (i >> (n - 1 - c)) & 1:
                    expect[i] = psi[i ^ (1 << (n - 1 - t))]
            assert np.allclose(k.apply_cx(psi.copy(), n, c, t), expect)
