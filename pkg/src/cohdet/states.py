"""Density-matrix domain type, validation, block views, and random states.

The computational product basis is fixed throughout: a ``DensityMatrix``
carries the subsystem dimensions of its tensor factors in order, and no
operation ever rotates the basis behind the caller's back. Reordering
subsystems is always explicit via :func:`permute_subsystems`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from . import linalg
from .errors import (
    BadPermutationError,
    BadRankError,
    NotHermitianError,
    NotPositiveError,
    NotUnitTraceError,
    QubitNotFirstError,
    ShapeError,
)

HERMITICITY_TOL = 1e-9
TRACE_TOL = 1e-9
PSD_TOL = 1e-10

# Seeded-stream contract: uniforms from numpy's PCG64, Gaussians by Box-Muller
# on top of them, Dirichlet weights as normalized -log(1-u) draws. Bump the
# tag if any of that ever changes, so recorded fixtures stay attributable.
RNG_SCHEME = "pcg64-boxmuller-v1"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A square complex matrix together with its subsystem dimensions.

    Construction checks shape consistency only; use :func:`validate` when the
    physical invariants (Hermitian, unit trace, positive semidefinite) need
    to be certified. The wrapped array is read-only.
    """

    matrix: np.ndarray
    dims: tuple

    def __post_init__(self):
        m = linalg.as_matrix(self.matrix)
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise ShapeError(f"subsystem dimensions must be positive, got {dims}")
        if m.shape != (math.prod(dims), math.prod(dims)):
            raise ShapeError(
                f"matrix is {m.shape[0]}x{m.shape[1]} but dims {dims} imply {math.prod(dims)}"
            )
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def state_violations(matrix, dims, require_psd: bool = True) -> list:
    """All failed physical invariants of a candidate, with magnitudes.

    Returns an empty list when the candidate is a valid state. Structural
    problems (wrong shape, bad dims) raise ShapeError instead of being
    reported, since nothing else can be checked without a square matrix.
    """
    state = DensityMatrix(matrix, dims)
    m = state.matrix
    found = []
    deviation = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
    if deviation > HERMITICITY_TOL:
        found.append(f"not Hermitian: max |m - m^H| entry is {deviation:.3e}")
        return found  # eigenvalues are meaningless past this point
    trace_error = abs(complex(np.trace(m)) - 1.0)
    if trace_error > TRACE_TOL:
        found.append(f"trace is not 1: |Tr - 1| = {trace_error:.3e}")
    if require_psd:
        smallest = float(np.linalg.eigvalsh((m + m.conj().T) / 2.0)[0])
        if smallest < -PSD_TOL:
            found.append(f"not positive semidefinite: min eigenvalue {smallest:.3e}")
    return found


def validate(matrix, dims, *, require_psd: bool = True) -> DensityMatrix:
    """Certify a candidate as a density matrix or raise the first violation.

    Tolerances: Hermiticity and trace within 1e-9, smallest eigenvalue no
    lower than -1e-10. Nothing is clamped or renormalized; a candidate that
    fails is rejected as is. ``require_psd=False`` skips only the positivity
    check (used for as-printed fixture constructions that are Hermitian and
    unit-trace but indefinite).
    """
    found = state_violations(matrix, dims, require_psd=require_psd)
    if found:
        message = "; ".join(found)
        if found[0].startswith("not Hermitian"):
            raise NotHermitianError(message, found)
        if found[0].startswith("trace"):
            raise NotUnitTraceError(message, found)
        raise NotPositiveError(message, found)
    return DensityMatrix(matrix, dims)


@dataclass(frozen=True, eq=False)
class BlockDecomposition:
    """The four-block view [[p, q], [q^H, r]] of a qubit-first state.

    ``p`` and ``r`` are the diagonal blocks conditioned on the qubit being 0
    or 1; ``q`` is the upper coherence block. All three have order d, the
    combined dimension of the remaining factors.
    """

    p: np.ndarray
    q: np.ndarray
    r: np.ndarray

    def reassemble(self) -> np.ndarray:
        return np.block([[self.p, self.q], [self.q.conj().T, self.r]])


def block_decompose(rho: DensityMatrix) -> BlockDecomposition:
    """Split a qubit-first state into its P/Q/R blocks.

    The first subsystem must have dimension 2; everything after it is
    treated as a single qudit. Callers with the qubit elsewhere must
    permute first, explicitly.
    """
    if rho.dims[0] != 2:
        raise QubitNotFirstError(
            f"first subsystem has dimension {rho.dims[0]}; permute the qubit to the front"
        )
    d = rho.dim // 2
    m = rho.matrix
    return BlockDecomposition(
        p=linalg.as_matrix(m[:d, :d]),
        q=linalg.as_matrix(m[:d, d:]),
        r=linalg.as_matrix(m[d:, d:]),
    )


def permute_subsystems(rho: DensityMatrix, order) -> DensityMatrix:
    """Reorder tensor factors: output factor k is input factor order[k]."""
    order = tuple(int(i) for i in order)
    n = len(rho.dims)
    if sorted(order) != list(range(n)):
        raise BadPermutationError(f"order {order} is not a permutation of 0..{n - 1}")
    dims = rho.dims
    tensor = rho.matrix.reshape(dims + dims)
    axes = order + tuple(n + i for i in order)
    permuted = np.ascontiguousarray(tensor.transpose(axes))
    new_dims = tuple(dims[i] for i in order)
    total = math.prod(new_dims)
    return DensityMatrix(permuted.reshape(total, total), new_dims)


def _normalize_dims(dims) -> tuple:
    if isinstance(dims, (int, np.integer)):
        dims = (int(dims),)
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise ShapeError(f"subsystem dimensions must be positive, got {dims}")
    return dims


def _complex_gaussians(rng, rows: int, cols: int) -> np.ndarray:
    """Standard complex Gaussians via Box-Muller over the uniform stream."""
    u1 = rng.random((rows, cols))
    u2 = rng.random((rows, cols))
    radius = np.sqrt(-2.0 * np.log1p(-u1))
    angle = 2.0 * np.pi * u2
    return radius * np.cos(angle) + 1.0j * radius * np.sin(angle)


def _ginibre_state(rng, dims, rank: int) -> DensityMatrix:
    total = math.prod(dims)
    g = _complex_gaussians(rng, total, rank)
    m = g @ g.conj().T
    m /= np.trace(m).real
    m = (m + m.conj().T) / 2.0
    return DensityMatrix(m, dims)


def random_density(dims, rank=None, seed: int = 0) -> DensityMatrix:
    """Seeded random state: normalized G G^H with Gaussian G of given rank.

    ``dims`` may be a single dimension or a tuple of subsystem dimensions.
    Same seed, same state, bit for bit.
    """
    dims = _normalize_dims(dims)
    total = math.prod(dims)
    if rank is None:
        rank = total
    rank = int(rank)
    if not 1 <= rank <= total:
        raise BadRankError(f"rank must be in 1..{total}, got {rank}")
    rng = np.random.Generator(np.random.PCG64(seed))
    return _ginibre_state(rng, dims, rank)


def random_separable(dims, terms: int = 1, seed: int = 0, factor_rank=None) -> DensityMatrix:
    """Seeded mixture of random product states: separable by construction.

    Draws ``terms`` flat-Dirichlet weights, then for each term an independent
    random state per subsystem, and mixes the tensor products. Factors are
    full rank by default; ``factor_rank=1`` gives pure factors.
    """
    dims = _normalize_dims(dims)
    if len(dims) < 2:
        raise ShapeError("separable states need at least two subsystems")
    terms = int(terms)
    if terms < 1:
        raise ShapeError(f"terms must be >= 1, got {terms}")
    if factor_rank is not None:
        factor_rank = int(factor_rank)
        if not 1 <= factor_rank <= min(dims):
            raise BadRankError(f"factor rank must be in 1..{min(dims)}, got {factor_rank}")
    rng = np.random.Generator(np.random.PCG64(seed))
    weights = -np.log1p(-rng.random(terms))
    weights /= weights.sum()
    total = math.prod(dims)
    acc = np.zeros((total, total), dtype=np.complex128)
    for w in weights:
        factors = [
            _ginibre_state(rng, (d,), d if factor_rank is None else factor_rank).matrix
            for d in dims
        ]
        acc += w * reduce(np.kron, factors)
    return DensityMatrix((acc + acc.conj().T) / 2.0, dims)
