"""Time the compiled hot kernels against their pure-numpy fallbacks.

Run with::

    python3 benchmarks/bench_kernels.py [--repeats N]

Each kernel is exercised on a workload shaped like its real call site
(phonon-table transforms, correlation-curve evaluation, orientation
sampling), checked for agreement between the two implementations, and
timed best-of-N.  If numba is unavailable (or DIMERCORR_NO_NUMBA is
set) only the numpy path is reported.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from dimercorr import _kernels


def _best_of(fn, args, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def _workloads():
    rng = np.random.default_rng(12345)

    # Filon transform: dense early grid + stretched tail, many wavenumbers,
    # like the dissipator rate integrals over the phonon correlation tables.
    nodes = np.concatenate(
        [np.linspace(0.0, 2.0, 2501), 2.0 + np.geomspace(1e-3, 238.0, 1500)]
    )
    values = (
        np.exp(-nodes / 35.0) * np.cos(0.9 * nodes)
        + 1j * np.exp(-nodes / 20.0) * np.sin(0.4 * nodes)
    ).astype(complex)
    ks = np.linspace(-40.0, 40.0, 321)

    # Exponential-sum evaluation: 16 Liouvillian modes on a long delay grid.
    coeffs = (rng.standard_normal(16) + 1j * rng.standard_normal(16)).astype(complex)
    rates = (-rng.uniform(1e-4, 1e-1, 16) + 1j * rng.uniform(-8.0, 8.0, 16)).astype(
        complex
    )
    ts = np.linspace(0.0, 8000.0, 200_001)

    # Orientation sampling: one large batch of inverse-CDF draws.
    u = rng.uniform(0.0, 1.0, 1_000_000)

    return [
        (
            "oscillatory_transform",
            (nodes, values, ks),
            _kernels.oscillatory_transform_numpy,
            getattr(_kernels, "oscillatory_transform_numba", None),
            lambda a, b: np.max(np.abs(a - b)),
        ),
        (
            "expsum_eval",
            (coeffs, rates, ts),
            _kernels.expsum_eval_numpy,
            getattr(_kernels, "expsum_eval_numba", None),
            lambda a, b: np.max(np.abs(a - b)),
        ),
        (
            "vmf_cos_batch",
            (u, 10.0),
            _kernels.vmf_cos_batch_numpy,
            getattr(_kernels, "vmf_cos_batch_numba", None),
            lambda a, b: np.max(np.abs(a - b)),
        ),
    ]


def _contiguous(args):
    out = []
    for a in args:
        if isinstance(a, np.ndarray):
            if np.iscomplexobj(a):
                out.append(np.ascontiguousarray(a, dtype=np.complex128))
            else:
                out.append(np.ascontiguousarray(a, dtype=np.float64))
        else:
            out.append(a)
    return tuple(out)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    print(f"numba active in package: {_kernels.USING_NUMBA}")
    header = f"{'kernel':24s} {'numpy [ms]':>12s} {'numba [ms]':>12s} {'speedup':>9s} {'max |diff|':>12s}"
    print(header)
    print("-" * len(header))

    for name, work, numpy_fn, numba_fn, diff in _workloads():
        t_numpy = _best_of(numpy_fn, work, args.repeats) * 1e3
        if numba_fn is None:
            print(f"{name:24s} {t_numpy:12.2f} {'n/a':>12s} {'n/a':>9s} {'n/a':>12s}")
            continue
        cargs = _contiguous(work)
        numba_fn(*cargs)  # compile before timing
        t_numba = _best_of(numba_fn, cargs, args.repeats) * 1e3
        err = diff(numpy_fn(*work), numba_fn(*cargs))
        print(
            f"{name:24s} {t_numpy:12.2f} {t_numba:12.2f} "
            f"{t_numpy / t_numba:8.1f}x {err:12.2e}"
        )


if __name__ == "__main__":
    main()
