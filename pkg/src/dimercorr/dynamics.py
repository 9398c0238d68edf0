"""Time evolution and steady states of the vectorized master equation.

The generator is a 16 x 16 matrix acting on column-major vectorized
density matrices.  Its eigendecomposition is computed once per
``Propagator`` and reused for every propagation and expectation curve;
an eigenvector condition number above ``cond_limit`` switches to matrix
exponentials instead (the generator is then treated as effectively
defective).  Expectation curves reduce to exponential sums

    Tr[O rho(t)] = sum_k c_k exp(lambda_k t),
    c_k = (vec(O+)+ V)_k (V^-1 vec(rho0))_k,

evaluated by the compiled kernel.
"""

from __future__ import annotations

import warnings

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import expm

from ._kernels import expsum_eval
from .hilbert import DIM

__all__ = [
    "Propagator",
    "SteadyStateUniquenessWarning",
    "WeakNegativityWarning",
    "log_time_grid",
    "validate_density_matrix",
    "vectorize",
    "unvectorize",
]


class SteadyStateUniquenessWarning(UserWarning):
    """More than one generator eigenvalue sits in the near-zero band.

    The band threshold is deliberately conservative (1e-6 of the largest
    eigenvalue magnitude), so configurations whose slowest relaxation
    rates are many orders below the coherent frequencies trip it even
    when the stationary state is unique.  Pass
    ``check_uniqueness=False`` to silence in sweep loops.
    """


class WeakNegativityWarning(UserWarning):
    """A density matrix carries small negative eigenvalues (numerical)."""


def vectorize(rho: NDArray) -> NDArray:
    """Column-major (Fortran) vectorization of a density matrix."""
    return np.asarray(rho, dtype=complex).flatten(order="F")


def unvectorize(x: NDArray) -> NDArray:
    """Inverse of :func:`vectorize`."""
    return np.asarray(x, dtype=complex).reshape(DIM, DIM, order="F")


def validate_density_matrix(
    rho: NDArray,
    *,
    herm_tol: float = 1e-9,
    trace_tol: float = 1e-9,
    warn_negativity: float = 1e-7,
    fail_negativity: float = 1e-5,
) -> NDArray:
    """Check Hermiticity, unit trace, and positivity; return eigenvalues.

    Eigenvalues below ``-fail_negativity`` raise; eigenvalues between
    ``-fail_negativity`` and ``-warn_negativity`` only warn, since modest
    transient negativity is inherent to non-secular generators and to
    accumulated floating-point error.
    """
    rho = np.asarray(rho, dtype=complex)
    scale = max(1.0, float(np.abs(rho).max()))
    if np.abs(rho - rho.conj().T).max() > herm_tol * scale:
        raise ValueError("density matrix is not Hermitian")
    trace = np.trace(rho).real
    if abs(trace - 1.0) > trace_tol:
        raise ValueError(f"density matrix trace {trace} deviates from 1")
    evals = np.linalg.eigvalsh(rho)
    lowest = float(evals.min())
    if lowest < -fail_negativity:
        raise ValueError(f"density matrix has negative eigenvalue {lowest}")
    if lowest < -warn_negativity:
        warnings.warn(
            f"density matrix eigenvalue {lowest} below -{warn_negativity}",
            WeakNegativityWarning,
            stacklevel=2,
        )
    return evals


def log_time_grid(
    t_max: float, n: int = 400, t_min: float | None = None
) -> NDArray:
    """Zero plus a geometric ramp of ``n - 1`` points up to ``t_max``.

    Suits correlation curves whose features span many decades; the
    default ``t_min`` is eight decades below ``t_max``.
    """
    if t_max <= 0:
        raise ValueError("t_max must be positive")
    if n < 2:
        raise ValueError("need at least two grid points")
    if t_min is None:
        t_min = t_max * 1e-8
    if not 0 < t_min < t_max:
        raise ValueError("t_min must lie in (0, t_max)")
    return np.concatenate([[0.0], np.geomspace(t_min, t_max, n - 1)])


class Propagator:
    """Cached spectral propagator for one generator matrix.

    Attributes:
        matrix: The generator (16 x 16, 1/ps).
        eigenvalues: Generator spectrum (16,).
        diagonalizable: False when the eigenvector condition number
            exceeded ``cond_limit`` and the exponential fallback is in
            effect.
    """

    def __init__(self, matrix: NDArray, *, cond_limit: float = 1e10) -> None:
        self.matrix = np.asarray(matrix, dtype=complex)
        if self.matrix.shape != (DIM * DIM, DIM * DIM):
            raise ValueError("generator must act on vectorized 4x4 matrices")
        eigenvalues, vectors = np.linalg.eig(self.matrix)
        self.eigenvalues = eigenvalues
        self._vectors = vectors
        self.condition_number = float(np.linalg.cond(vectors))
        self.diagonalizable = self.condition_number < cond_limit
        self._vectors_inv = np.linalg.inv(vectors) if self.diagonalizable else None

    # ------------------------------------------------------------ evolution

    def propagate(self, rho0: NDArray, ts: NDArray) -> NDArray:
        """Evolved density matrices at the requested times, shape (nt, 4, 4)."""
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        x0 = vectorize(rho0)
        if self.diagonalizable:
            c = self._vectors_inv @ x0
            phases = np.exp(ts[:, None] * self.eigenvalues[None, :])
            xs = (phases * c[None, :]) @ self._vectors.T
        else:
            xs = np.empty((ts.size, DIM * DIM), dtype=complex)
            for i, t in enumerate(ts):
                xs[i] = expm(self.matrix * t) @ x0
        return xs.reshape(ts.size, DIM, DIM).transpose(0, 2, 1)

    def expectation_curve(
        self, observable: NDArray, rho0: NDArray, ts: NDArray
    ) -> NDArray:
        """Tr[O rho(t)] over the time grid as a complex array."""
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        if self.diagonalizable:
            left = vectorize(np.asarray(observable).conj().T).conj() @ self._vectors
            right = self._vectors_inv @ vectorize(rho0)
            return expsum_eval(left * right, self.eigenvalues, ts)
        states = self.propagate(rho0, ts)
        return np.einsum("ij,tji->t", np.asarray(observable, dtype=complex), states)

    # ---------------------------------------------------------- stationarity

    def steady_state(
        self,
        *,
        check_uniqueness: bool = True,
        residual_tol: float = 1e-10,
    ) -> NDArray:
        """Trace-one solution of L rho = 0 via constrained least squares.

        Raises when the residual exceeds ``residual_tol``.  With
        ``check_uniqueness`` a :class:`SteadyStateUniquenessWarning` is
        emitted whenever more than one eigenvalue sits inside the
        numerical-zero band (1e4 machine epsilons of the spectral
        radius, so genuine dissipative gaps far above round-off never
        trigger it); for a genuinely degenerate stationary space the
        returned state is the minimum-norm member.
        """
        trace_row = vectorize(np.eye(DIM))[None, :].conj()
        a = np.vstack([self.matrix, trace_row])
        b = np.zeros(DIM * DIM + 1, dtype=complex)
        b[-1] = 1.0
        x, *_ = np.linalg.lstsq(a, b, rcond=None)
        residual = float(np.abs(self.matrix @ x).max())
        if residual > residual_tol:
            raise RuntimeError(
                f"stationary-state residual {residual:.3e} exceeds {residual_tol:.1e}"
            )
        if check_uniqueness:
            scale = float(np.abs(self.eigenvalues).max())
            zero_band = 1e4 * np.finfo(float).eps * scale
            near_zero = int(np.sum(np.abs(self.eigenvalues) < zero_band))
            if near_zero > 1:
                warnings.warn(
                    f"{near_zero} generator eigenvalues within the "
                    f"numerical-zero band ({zero_band:.1e}/ps); stationary "
                    "state may not be unique",
                    SteadyStateUniquenessWarning,
                    stacklevel=2,
                )
        rho = unvectorize(x)
        return 0.5 * (rho + rho.conj().T)
