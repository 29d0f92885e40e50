"""Lie-closure engine, the gauge algebra [S(A), S(A)], the ad* map with its
kernel test, and numeric Lie-algebra classification reports.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .backgrounds import BiRepresentation, check_C0
from .errors import (
    C0Violation,
    DecompositionFailure,
    DimensionMismatch,
    NotInLiePi,
    ValidationError,
)
from .linalg import (
    DEFAULT_TOL,
    RealSubspace,
    comm,
    dagger,
    frob,
    jordan_circ,
    real_span,
    vec_real,
)


@dataclass
class MatrixLieAlgebra:
    span: RealSubspace
    closed: bool
    passes: int = 0

    @property
    def dim(self) -> int:
        return self.span.dim


@dataclass
class DerivationOperator:
    """Matrix of x -> a x + x a^dag on pi(A), written in the algebra basis."""

    matrix: np.ndarray

    def unit_image(self, unit_coords):
        return self.matrix @ unit_coords


@dataclass
class LieAlgebraReport:
    dim: int
    center_dim: int
    derived_dim: int
    perfect: bool
    traceless: bool
    ideal_dims: list[int]

    def to_dict(self):
        return {
            "dim": self.dim,
            "center_dim": self.center_dim,
            "derived_dim": self.derived_dim,
            "perfect": self.perfect,
            "traceless": self.traceless,
            "ideal_dims": list(self.ideal_dims),
        }


def lie_closure(generators, tol=DEFAULT_TOL, max_passes=None) -> MatrixLieAlgebra:
    """Iterate span <- span + [span, span] on the current orthonormal basis
    until the dimension stabilizes. Bounded by 2 dim(H)^2 passes."""
    generators = [np.asarray(g, dtype=complex) for g in generators]
    if not generators:
        raise DimensionMismatch("lie_closure needs at least one generator")
    n = generators[0].shape[0]
    if max_passes is None:
        max_passes = 2 * n * n + 1
    span = real_span(generators, tol)
    passes = 0
    while passes < max_passes:
        passes += 1
        basis = span.basis
        candidates = [
            comm(basis[i], basis[j])
            for i in range(len(basis))
            for j in range(i + 1, len(basis))
        ]
        new_span = span.extended(candidates)
        if new_span.dim == span.dim:
            return MatrixLieAlgebra(new_span, True, passes)
        span = new_span
    return MatrixLieAlgebra(span, False, passes)


def lie_pi(rep: BiRepresentation):
    """(Lie_pi(A), [pi(A), pi(A)]) with the decomposition verified:
    Lie_pi = pi(A) + [pi,pi], [pi(A), [pi,pi]] in pi(A), [pi,pi] closed."""
    tol = rep.tol
    pspan = rep.pi_span()
    brackets = [
        comm(rep.pi[i], rep.pi[j])
        for i in range(len(rep.pi))
        for j in range(i + 1, len(rep.pi))
    ]
    bspan = real_span(brackets, tol, shape=(rep.hilbert_dim, rep.hilbert_dim))
    worst = 0.0
    for x in bspan.basis:
        for y in bspan.basis:
            worst = max(worst, bspan.residual(comm(x, y)))
        for p in pspan.basis:
            worst = max(worst, pspan.residual(comm(x, p)))
    if worst > tol * 10:
        raise DecompositionFailure(
            f"Lie_pi decomposition residual {worst:.2e}; input is not a Jordan"
            " representation"
        )
    total = pspan.extended(bspan.basis)
    if total.dim != pspan.dim + bspan.dim:
        raise DecompositionFailure(
            f"dim Lie_pi = {total.dim} != {pspan.dim} + {bspan.dim}"
        )
    return MatrixLieAlgebra(total, True), MatrixLieAlgebra(bspan, True)


def gauge_algebra(rep: BiRepresentation, tol=None) -> MatrixLieAlgebra:
    """Lie closure of [S(A), S(A)]; every basis element is checked to be
    anti-Hermitian, traceless, and to commute with J and chi."""
    tol = rep.tol if tol is None else tol
    c0 = check_C0(rep)
    if not c0:
        raise C0Violation(f"order-zero condition fails (residual {c0.residual:.2e})")
    s = rep.sym_images()
    brackets = [
        comm(s[i], s[j]) for i in range(len(s)) for j in range(i + 1, len(s))
    ]
    if not any(frob(b) > tol for b in brackets):
        return MatrixLieAlgebra(
            real_span([], tol, shape=(rep.hilbert_dim, rep.hilbert_dim)), True, 1
        )
    g = lie_closure(brackets, tol)
    for x in g.span.basis:
        if frob(x + dagger(x)) > tol * 10:
            raise ValidationError("gauge element is not anti-Hermitian")
        if abs(np.trace(x)) > tol * 10:
            raise ValidationError("gauge element has nonzero trace")
        if rep.J.commutator_residual(x) > tol * 10:
            raise ValidationError("gauge element does not commute with J")
        if frob(comm(rep.chi, x)) > tol * 10:
            raise ValidationError("gauge element does not commute with chi")
    return g


def ad_star(a, rep: BiRepresentation, tol=None) -> DerivationOperator:
    """x -> a x + x a^dag restricted to pi(A), in the algebra basis."""
    tol = rep.tol if tol is None else tol
    a = np.asarray(a, dtype=complex)
    d = rep.algebra.dim
    vecs = np.array([vec_real(p) for p in rep.pi])
    pinv = np.linalg.pinv(vecs.T)
    cols = []
    for p in rep.pi:
        w = a @ p + p @ dagger(a)
        v = vec_real(w)
        coords = pinv @ v
        resid = np.linalg.norm(vecs.T @ coords - v)
        if resid > tol * max(1.0, np.linalg.norm(v)):
            raise NotInLiePi(
                f"ad*_a does not preserve pi(A) (residual {resid:.2e})"
            )
        cols.append(coords)
    return DerivationOperator(np.array(cols).T)


def multiplication_operator(rep: BiRepresentation, x) -> np.ndarray:
    """Matrix of L_x: p -> x o p on pi(A) in the algebra basis."""
    x = np.asarray(x, dtype=complex)
    vecs = np.array([vec_real(p) for p in rep.pi])
    pinv = np.linalg.pinv(vecs.T)
    cols = [pinv @ vec_real(jordan_circ(x, p)) for p in rep.pi]
    return np.array(cols).T


def kernel_ad(rep: BiRepresentation, lie_algebra: RealSubspace | None = None,
              tol=None) -> int:
    """Kernel dimension of a -> ad*_a restricted to [pi(A), pi(A)] (or to an
    explicitly supplied span, used for negative controls)."""
    tol = rep.tol if tol is None else tol
    if lie_algebra is None:
        _, bracket_alg = lie_pi(rep)
        lie_algebra = bracket_alg.span
    basis = lie_algebra.basis
    if not basis:
        return 0
    vecs = np.array([vec_real(p) for p in rep.pi])
    pinv = np.linalg.pinv(vecs.T)
    rows = []
    for g in basis:
        cols = []
        for p in rep.pi:
            w = g @ p + p @ dagger(g)
            cols.append(pinv @ vec_real(w))
        rows.append(np.array(cols).T.ravel())
    mat = np.array(rows).T  # columns indexed by the Lie basis
    sv = np.linalg.svd(mat, compute_uv=False)
    smax = sv[0] if sv.size and sv[0] > 0 else 1.0
    rank = int(np.sum(sv > tol * max(1.0, smax)))
    return len(basis) - rank


def _ad_matrices(span: RealSubspace):
    basis = span.basis
    return [
        np.array([span.coefficients(comm(b, c)) for c in basis]).T for b in basis
    ]


def _centroid_ideals(span: RealSubspace, tol, seed=0):
    """Split a (semisimple, compact) algebra into simple ideals using a random
    symmetric element of the centroid; returns a list of dims."""
    m = span.dim
    if m == 0:
        return []
    ads = _ad_matrices(span)
    eye = np.eye(m)
    blocks = [np.kron(ad.T, eye) - np.kron(eye, ad) for ad in ads]
    system = np.vstack(blocks)
    _, sv, vt = np.linalg.svd(system)
    null_mask = np.concatenate([sv, np.zeros(vt.shape[0] - sv.size)]) < 1e-8 * max(
        1.0, sv[0] if sv.size else 1.0
    )
    null_basis = vt[null_mask]
    if null_basis.shape[0] == 0:
        return [m]
    rng = np.random.default_rng(seed)
    for _ in range(8):
        t = sum(w * nb.reshape(m, m) for w, nb in zip(
            rng.standard_normal(null_basis.shape[0]), null_basis
        ))
        t = 0.5 * (t + t.T)
        evals, evecs = np.linalg.eigh(t)
        # cluster eigenvalues; each eigenspace of a generic centroid element
        # is a sum of ideals, generically a single one
        spread = max(1e-12, float(evals[-1] - evals[0]))
        clusters = [[0]]
        for i in range(1, m):
            if evals[i] - evals[i - 1] > 1e-6 * max(1.0, spread):
                clusters.append([i])
            else:
                clusters[-1].append(i)
        ok = True
        dims = []
        for idx in clusters:
            proj = evecs[:, idx]
            pp = proj @ proj.T
            for ad in ads:
                image = ad @ proj
                if np.linalg.norm(image - pp @ image) > 1e-7 * max(
                    1.0, np.linalg.norm(image)
                ):
                    ok = False
                    break
            if not ok:
                break
            dims.append(len(idx))
        if ok and len(dims) > 1:
            return sorted(dims)
        if ok and len(dims) == 1:
            # a single cluster can still be correct (one simple ideal)
            if null_basis.shape[0] == 1:
                return [m]
        seed += 1
    return [m]


def classify(g: MatrixLieAlgebra, tol=DEFAULT_TOL, seed=0) -> LieAlgebraReport:
    """Total, center, and derived dimensions, perfectness and tracelessness
    flags, and the dimension signature of the simple ideals."""
    if not g.closed:
        raise ValidationError("classify needs a closed Lie algebra")
    span = g.span
    m = span.dim
    if m == 0:
        return LieAlgebraReport(0, 0, 0, True, True, [])
    basis = span.basis
    ads = _ad_matrices(span)
    # center = joint kernel of x -> [b_i, x] over all i, in coordinates
    center_mat = np.vstack(ads)
    sv = np.linalg.svd(center_mat, compute_uv=False)
    smax = sv[0] if sv.size and sv[0] > 0 else 1.0
    center_dim = m - int(np.sum(sv > 1e-8 * max(1.0, smax)))

    brackets = [
        comm(basis[i], basis[j]) for i in range(m) for j in range(i + 1, m)
    ]
    derived = real_span(brackets, span.tol, shape=span.shape)
    derived_dim = derived.dim
    perfect = derived_dim == m
    traceless = max(abs(np.trace(b)) for b in basis) < tol * 10

    simple_dims = _centroid_ideals(derived, tol, seed) if derived_dim else []
    ideal_dims = sorted([1] * center_dim + simple_dims)
    return LieAlgebraReport(m, center_dim, derived_dim, perfect, traceless, ideal_dims)


def is_perfect(g: MatrixLieAlgebra, tol=DEFAULT_TOL) -> bool:
    basis = g.span.basis
    if not basis:
        return True
    brackets = [
        comm(basis[i], basis[j])
        for i in range(len(basis))
        for j in range(i + 1, len(basis))
    ]
    derived = real_span(brackets, g.span.tol, shape=g.span.shape)
    return derived.dim == g.span.dim
