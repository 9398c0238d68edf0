"""Two-emitter Hilbert space: basis, ladder operators, eigensystems.

The dimer lives in a fixed four-dimensional product basis

    index 0: |gg>   both emitters in the ground state
    index 1: |eg>   emitter 1 excited
    index 2: |ge>   emitter 2 excited
    index 3: |ee>   both excited

Every operator in the package is a dense 4x4 complex matrix in this
ordering.  This module provides the site ladder operators, Hermitian
eigendecomposition with deterministic handling of the degenerate
single-excitation manifold, and the decomposition of an operator into
its Bohr-frequency components (the building blocks of the non-secular
dissipators).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

#: Basis labels in storage order.
BASIS_LABELS = ("gg", "eg", "ge", "ee")

#: Hilbert-space dimension.
DIM = 4

StateVector = NDArray[np.complexfloating]
OperatorMatrix = NDArray[np.complexfloating]

#: Bohr decomposition: list of (frequency [meV], operator component) pairs.
BohrDecomposition = list[tuple[float, OperatorMatrix]]

_VALID_KINDS = ("raise", "lower", "number")


def basis_state(label: str) -> StateVector:
    """Unit ket for one of the four basis labels ("gg", "eg", "ge", "ee")."""
    if label not in BASIS_LABELS:
        raise ValueError(f"unknown basis label {label!r}; expected one of {BASIS_LABELS}")
    ket = np.zeros(DIM, dtype=complex)
    ket[BASIS_LABELS.index(label)] = 1.0
    return ket


def site_operator(m: int, kind: str) -> OperatorMatrix:
    """Ladder or number operator acting on one emitter.

    Args:
        m: Emitter index, 1 or 2.
        kind: One of "raise" (sigma^+), "lower" (sigma^-) or "number"
            (sigma^+ sigma^-).

    Returns:
        The 4x4 matrix in the (gg, eg, ge, ee) basis.

    Raises:
        ValueError: If ``m`` is not 1 or 2, or ``kind`` is unknown.
    """
    if m not in (1, 2):
        raise ValueError(f"emitter index must be 1 or 2, got {m}")
    if kind not in _VALID_KINDS:
        raise ValueError(f"kind must be one of {_VALID_KINDS}, got {kind!r}")

    op = np.zeros((DIM, DIM), dtype=complex)
    if m == 1:
        # |eg><gg| + |ee><ge|
        raising_pairs = ((1, 0), (3, 2))
    else:
        # |ge><gg| + |ee><eg|
        raising_pairs = ((2, 0), (3, 1))
    for i, j in raising_pairs:
        op[i, j] = 1.0

    if kind == "raise":
        return op
    if kind == "lower":
        return op.conj().T
    return op @ op.conj().T  # number = sigma^+ sigma^-


@dataclass
class EigenSystem:
    """Result of diagonalising a Hermitian 4x4 operator.

    Attributes:
        energies: Eigenvalues in meV, sorted ascending.
        states: Eigenvectors as columns, ``states[:, k]`` belongs to
            ``energies[k]``.
        degeneracy_groups: Indices grouped by equal energy (within
            ``degeneracy_tol``); every index appears in exactly one group.
        degeneracy_tol: Energy tolerance [meV] used for grouping, reused
            by :func:`bohr_decompose` for frequency merging.
    """

    energies: NDArray[np.floating]
    states: OperatorMatrix
    degeneracy_groups: list[list[int]] = field(default_factory=list)
    degeneracy_tol: float = 1e-9

    def projector(self, k: int) -> OperatorMatrix:
        """Rank-1 projector |k><k| onto eigenstate ``k``."""
        v = self.states[:, k]
        return np.outer(v, v.conj())


def _group_degenerate(values: NDArray[np.floating], tol: float) -> list[list[int]]:
    """Group sorted values into runs whose neighbours differ by <= tol."""
    groups: list[list[int]] = [[0]]
    for k in range(1, len(values)):
        if values[k] - values[groups[-1][-1]] <= tol:
            groups[-1].append(k)
        else:
            groups.append([k])
    return groups


def _fix_phase(vec: StateVector) -> StateVector:
    """Rotate a vector's global phase so its largest component is real positive."""
    k = int(np.argmax(np.abs(vec)))
    pivot = vec[k]
    if abs(pivot) == 0.0:
        return vec
    return vec * (abs(pivot) / pivot)


def eigendecompose(H: OperatorMatrix, degeneracy_tol: float = 1e-9) -> EigenSystem:
    """Diagonalise a Hermitian operator with deterministic degenerate bases.

    Eigenvalues are sorted ascending.  If a degenerate group spans exactly
    the single-excitation manifold span{|eg>, |ge>} (the generic situation
    for an uncoupled dimer), its eigenvectors are replaced by the symmetric
    and antisymmetric combinations (|eg> +- |ge>)/sqrt(2) so that downstream
    operator decompositions do not depend on LAPACK's arbitrary basis choice.
    All eigenvector phases are fixed (largest component real positive).

    Args:
        H: Hermitian 4x4 matrix [meV].
        degeneracy_tol: Energies closer than this [meV] count as degenerate.

    Raises:
        ValueError: If ``H`` is not Hermitian to 1e-12 (relative to its norm).
    """
    H = np.asarray(H, dtype=complex)
    if H.shape != (DIM, DIM):
        raise ValueError(f"expected a {DIM}x{DIM} matrix, got shape {H.shape}")
    scale = max(1.0, float(np.linalg.norm(H)))
    if np.linalg.norm(H - H.conj().T) > 1e-12 * scale:
        raise ValueError("matrix is not Hermitian within 1e-12")

    energies, states = np.linalg.eigh(H)
    groups = _group_degenerate(energies, degeneracy_tol)

    single_manifold = np.zeros((DIM, DIM))
    single_manifold[1, 1] = single_manifold[2, 2] = 1.0

    for group in groups:
        if len(group) < 2:
            continue
        proj = sum(np.outer(states[:, k], states[:, k].conj()) for k in group)
        if len(group) == 2 and np.linalg.norm(proj - single_manifold) < 1e-9:
            sym = (basis_state("eg") + basis_state("ge")) / np.sqrt(2.0)
            anti = (basis_state("eg") - basis_state("ge")) / np.sqrt(2.0)
            states[:, group[0]] = sym
            states[:, group[1]] = anti

    for k in range(DIM):
        states[:, k] = _fix_phase(states[:, k])

    return EigenSystem(
        energies=energies,
        states=states,
        degeneracy_groups=groups,
        degeneracy_tol=degeneracy_tol,
    )


def bohr_decompose(A: OperatorMatrix, eig: EigenSystem) -> BohrDecomposition:
    """Split an operator into Bohr-frequency components.

    Each component is A(omega) = sum_{(i,j): E_j - E_i = omega} P_i A P_j
    with the eigenprojectors P of ``eig``; transition frequencies closer
    than ``eig.degeneracy_tol`` are merged into one component.  The
    components sum back to ``A`` exactly, and in the interaction picture
    A(omega) rotates as exp(-i omega t / hbar).

    Args:
        A: Operator to decompose (4x4).
        eig: Eigensystem of the Hamiltonian generating the dynamics.

    Returns:
        List of (omega [meV], component) sorted by ascending omega.
    """
    A = np.asarray(A, dtype=complex)
    energies, states = eig.energies, eig.states
    # matrix elements in the eigenbasis
    A_eig = states.conj().T @ A @ states

    freq_ij = [
        (float(energies[j] - energies[i]), i, j)
        for i in range(DIM)
        for j in range(DIM)
    ]
    freq_ij.sort(key=lambda t: t[0])

    components: BohrDecomposition = []
    current_omega: float | None = None
    current = np.zeros((DIM, DIM), dtype=complex)
    for omega, i, j in freq_ij:
        if current_omega is None or omega - current_omega > eig.degeneracy_tol:
            if current_omega is not None and np.any(current):
                components.append((current_omega, states @ current @ states.conj().T))
            current_omega = omega
            current = np.zeros((DIM, DIM), dtype=complex)
        current[i, j] = A_eig[i, j]
    if current_omega is not None and np.any(current):
        components.append((current_omega, states @ current @ states.conj().T))

    return components
