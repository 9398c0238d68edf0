"""Numerical hot kernels: numba-compiled with pure-numpy fallbacks.

Three kernels carry the numerically heavy inner loops of the package:

``oscillatory_transform``
    Piecewise-linear Filon quadrature of integral f(x) exp(i k x) dx over a
    tabulated (possibly non-uniform) grid, exact for linear segments at
    every k, used for the phonon propagator, the dissipator rate
    integrals and the absorption half-line Fourier transform.

``expsum_eval``
    Evaluation of sum_k c_k exp(w_k t) over a time grid (the regression
    correlator in the Liouvillian eigenbasis).

``vmf_cos_batch``
    Inverse-CDF sampling of cos(angle) for the von Mises-Fisher
    distribution.

Implementation selection happens once at import: if the environment
variable ``DIMERCORR_NO_NUMBA`` is set (any non-empty value) or numba is
not importable, the numpy fallbacks are used.  Both variants stay
importable under explicit names (``*_numba`` / ``*_numpy``) so the test
suite can assert their equivalence and ``benchmarks/bench_kernels.py``
can time them against each other.
"""

import os

import numpy as np

#: True when the numpy fallback path was selected at import time.
USING_NUMBA = False

# threshold on |k h| below which the segment integrals switch to series
_SMALL = 1e-2


# ----------------------------------------------------------------- numpy path


def _segment_integrals_numpy(k: float, h: np.ndarray):
    """I0 = int_0^h e^{iku} du and I1 = int_0^h u e^{iku} du per segment."""
    kh = k * h
    small = np.abs(kh) < _SMALL
    ikh = 1j * kh

    # series, horner in (i k h); exact enough to 1e-16 below the threshold
    s0 = np.ones_like(h, dtype=complex)
    s1 = np.full_like(h, 0.5, dtype=complex)
    term = np.ones_like(h, dtype=complex)
    for n in range(1, 9):
        term = term * ikh / n
        s0 += term / (n + 1)
        s1 += term / (n + 2)
    series_i0 = h * s0
    series_i1 = h * h * s1

    with np.errstate(divide="ignore", invalid="ignore"):
        ik = 1j * k if k != 0.0 else 1.0  # dummy, masked below
        e = np.exp(ikh)
        exact_i0 = (e - 1.0) / ik
        exact_i1 = (h * e) / ik - (e - 1.0) / (ik * ik)

    i0 = np.where(small, series_i0, exact_i0)
    i1 = np.where(small, series_i1, exact_i1)
    return i0, i1


def oscillatory_transform_numpy(
    nodes: np.ndarray, values: np.ndarray, ks: np.ndarray
) -> np.ndarray:
    """integral values(x) e^{i k x} dx for tabulated values, piecewise linear.

    Args:
        nodes: Strictly increasing sample points (n,).
        values: Complex samples at the nodes (n,).
        ks: Transform wavenumbers (m,).

    Returns:
        Complex array (m,): the transform at each k.
    """
    nodes = np.asarray(nodes, dtype=float)
    values = np.asarray(values, dtype=complex)
    ks = np.atleast_1d(np.asarray(ks, dtype=float))
    h = np.diff(nodes)
    a = values[:-1]
    b = (values[1:] - values[:-1]) / h
    out = np.empty(ks.shape, dtype=complex)
    for j, k in enumerate(ks):
        i0, i1 = _segment_integrals_numpy(k, h)
        out[j] = np.sum(np.exp(1j * k * nodes[:-1]) * (a * i0 + b * i1))
    return out


def expsum_eval_numpy(
    coeffs: np.ndarray, rates: np.ndarray, ts: np.ndarray
) -> np.ndarray:
    """sum_k coeffs[k] * exp(rates[k] * t) for each t, as a complex array."""
    coeffs = np.asarray(coeffs, dtype=complex)
    rates = np.asarray(rates, dtype=complex)
    ts = np.asarray(ts, dtype=float)
    # chunk over t to bound the (t, k) broadcast memory
    out = np.empty(ts.shape, dtype=complex)
    step = 4096
    for start in range(0, ts.size, step):
        block = ts[start : start + step, None] * rates[None, :]
        out[start : start + step] = np.exp(block) @ coeffs
    return out


def vmf_cos_batch_numpy(u: np.ndarray, kappa: float) -> np.ndarray:
    """cos(angle) samples of the von Mises-Fisher distribution on the sphere.

    Inverse CDF: t = 1 + log(u + (1-u) e^{-2 kappa}) / kappa, evaluated in
    the numerically stable form 1 + log1p((1-u) expm1(-2 kappa)) / kappa.
    kappa = 0 degenerates to the uniform distribution t = 2u - 1.  The
    result is clipped to [-1, 1]: at large kappa the u -> 0 endpoint can
    undershoot -1 by a few ulp-amplified parts in 1e9.
    """
    u = np.asarray(u, dtype=float)
    if kappa == 0.0:
        return 2.0 * u - 1.0
    t = 1.0 + np.log1p((1.0 - u) * np.expm1(-2.0 * kappa)) / kappa
    return np.clip(t, -1.0, 1.0)


# ----------------------------------------------------------------- numba path

oscillatory_transform = oscillatory_transform_numpy
expsum_eval = expsum_eval_numpy
vmf_cos_batch = vmf_cos_batch_numpy

if not os.environ.get("DIMERCORR_NO_NUMBA", ""):
    try:
        from numba import complex128, float64, jit

        @jit(
            complex128[::1](float64[::1], complex128[::1], float64[::1]),
            nopython=True,
            cache=True,
            nogil=True,
        )
        def oscillatory_transform_numba(nodes, values, ks):  # pragma: no cover
            n_seg = nodes.shape[0] - 1
            out = np.empty(ks.shape[0], dtype=np.complex128)
            for j in range(ks.shape[0]):
                k = ks[j]
                acc = 0.0 + 0.0j
                for s in range(n_seg):
                    t0 = nodes[s]
                    h = nodes[s + 1] - t0
                    a = values[s]
                    b = (values[s + 1] - values[s]) / h
                    kh = k * h
                    if abs(kh) < _SMALL:
                        s0 = 1.0 + 0.0j
                        s1 = 0.5 + 0.0j
                        term = 1.0 + 0.0j
                        for n in range(1, 9):
                            term = term * (1j * kh) / n
                            s0 += term / (n + 1)
                            s1 += term / (n + 2)
                        i0 = h * s0
                        i1 = h * h * s1
                    else:
                        ik = 1j * k
                        e = np.exp(1j * kh)
                        i0 = (e - 1.0) / ik
                        i1 = (h * e) / ik - (e - 1.0) / (ik * ik)
                    acc += np.exp(1j * k * t0) * (a * i0 + b * i1)
                out[j] = acc
            return out

        @jit(
            complex128[::1](complex128[::1], complex128[::1], float64[::1]),
            nopython=True,
            cache=True,
            nogil=True,
        )
        def expsum_eval_numba(coeffs, rates, ts):  # pragma: no cover
            out = np.empty(ts.shape[0], dtype=np.complex128)
            for i in range(ts.shape[0]):
                acc = 0.0 + 0.0j
                for k in range(coeffs.shape[0]):
                    acc += coeffs[k] * np.exp(rates[k] * ts[i])
                out[i] = acc
            return out

        @jit(
            float64[::1](float64[::1], float64),
            nopython=True,
            cache=True,
            nogil=True,
        )
        def vmf_cos_batch_numba(u, kappa):  # pragma: no cover
            out = np.empty(u.shape[0])
            if kappa == 0.0:
                for i in range(u.shape[0]):
                    out[i] = 2.0 * u[i] - 1.0
                return out
            em = np.expm1(-2.0 * kappa)
            for i in range(u.shape[0]):
                t = 1.0 + np.log1p((1.0 - u[i]) * em) / kappa
                out[i] = min(1.0, max(-1.0, t))
            return out

        def _wrap_transform(nodes, values, ks):
            return oscillatory_transform_numba(
                np.ascontiguousarray(nodes, dtype=np.float64),
                np.ascontiguousarray(values, dtype=np.complex128),
                np.ascontiguousarray(np.atleast_1d(ks), dtype=np.float64),
            )

        def _wrap_expsum(coeffs, rates, ts):
            return expsum_eval_numba(
                np.ascontiguousarray(coeffs, dtype=np.complex128),
                np.ascontiguousarray(rates, dtype=np.complex128),
                np.ascontiguousarray(ts, dtype=np.float64),
            )

        def _wrap_vmf(u, kappa):
            return vmf_cos_batch_numba(
                np.ascontiguousarray(u, dtype=np.float64), float(kappa)
            )

        oscillatory_transform = _wrap_transform
        expsum_eval = _wrap_expsum
        vmf_cos_batch = _wrap_vmf
        USING_NUMBA = True
    except ImportError:  # numba missing: stay on numpy silently
        pass
