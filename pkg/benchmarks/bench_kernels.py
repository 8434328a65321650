"""Compare the compiled and pure-numpy kernels on representative workloads.

Run with ``python benchmarks/bench_kernels.py``.
"""

import argparse
import timeit

import numpy as np

from qpe_surgery.kernels import available_backends
from qpe_surgery.synthesis.ring import GATES


def ring_workload(kern, n):
    rng = np.random.default_rng(0)
    m = rng.integers(-50, 50, size=(n, 2, 2, 4), dtype=np.int64)
    k = np.zeros(n, dtype=np.int64)
    g, kg = GATES["h"]
    return lambda: kern.ring_matmul_fixed(m.copy(), k.copy(), g, kg)


def statevector_workload(kern, n_qubits):
    rng = np.random.default_rng(1)
    psi = rng.normal(size=1 << n_qubits) + 1j * rng.normal(size=1 << n_qubits)
    u = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)

    def run():
        for q in range(n_qubits):
            kern.apply_1q(psi, n_qubits, q, u)
        for q in range(n_qubits - 1):
            kern.apply_cx(psi, n_qubits, q, q + 1)
    return run


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--batch", type=int, default=20000)
    ap.add_argument("--qubits", type=int, default=16)
    args = ap.parse_args()
    backends = available_backends()
    rows = []
    for label, make, size in [("ring_matmul_fixed", ring_workload, args.batch),
                              ("apply_1q+apply_cx", statevector_workload, args.qubits)]:
        times = {}
        for name, kern in backends.items():
            fn = make(kern, size)
            fn()  # warm up
            times[name] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
        rows.append((label, size, times))
    print(f"{'kernel':<20} {'size':>7} " + " ".join(f"{b:>12}" for b in backends) + "   speedup")
    for label, size, times in rows:
        line = f"{label:<20} {size:>7} " + " ".join(f"{times[b] * 1e3:>10.2f}ms" for b in backends)
        if "cython" in times:
            line += f"   {times['python'] / times['cython']:.1f}x"
        print(line)


if __name__ == "__main__":
    main()
