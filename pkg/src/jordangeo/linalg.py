"""Dense complex linear algebra: antilinear operators, quaternions, and
real spans of matrices under the real Hilbert-Schmidt pairing.

Every operator in the engine is a plain complex numpy array; real vector
spaces of matrices are handled by vectorizing over (Re, Im) parts so that
Re tr(X^dag Y) becomes the ordinary dot product.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import DimensionMismatch, NonUnitary

DEFAULT_TOL = 1e-9

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def dagger(t):
    """Conjugate transpose."""
    return np.asarray(t).conj().T


def comm(x, y):
    return x @ y - y @ x


def anticomm(x, y):
    return x @ y + y @ x


def jordan_circ(x, y):
    """Symmetrized product x o y = (xy + yx)/2."""
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape != y.shape or x.shape[0] != x.shape[1]:
        raise DimensionMismatch(f"jordan_circ on shapes {x.shape}, {y.shape}")
    return 0.5 * (x @ y + y @ x)


def tensor(*mats):
    """Kronecker product of one or more matrices, left to right."""
    out = np.asarray(mats[0], dtype=complex)
    for m in mats[1:]:
        out = np.kron(out, np.asarray(m, dtype=complex))
    return out


def dirsum(*mats):
    """Block-diagonal direct sum."""
    mats = [np.atleast_2d(np.asarray(m, dtype=complex)) for m in mats]
    n = sum(m.shape[0] for m in mats)
    c = sum(m.shape[1] for m in mats)
    out = np.zeros((n, c), dtype=complex)
    i = j = 0
    for m in mats:
        out[i : i + m.shape[0], j : j + m.shape[1]] = m
        i += m.shape[0]
        j += m.shape[1]
    return out


def trace(t):
    return complex(np.trace(t))


def matrix_exp(t):
    return expm(np.asarray(t, dtype=complex))


def frob(t):
    return float(np.linalg.norm(t))


def hs_inner(x, y):
    """Real Hilbert-Schmidt pairing Re tr(x^dag y)."""
    return float(np.real(np.vdot(x, y)))


def vec_real(t):
    """Flatten a complex matrix into the 2nm-dimensional real vector (Re, Im)."""
    t = np.asarray(t, dtype=complex)
    return np.concatenate([t.real.ravel(), t.imag.ravel()])


def unvec_real(v, shape):
    half = v.size // 2
    return (v[:half] + 1j * v[half:]).reshape(shape)


@dataclass(frozen=True)
class TensorSpace:
    """Ordered list of named tensor factors describing a Hilbert space."""

    factors: tuple[tuple[str, int], ...]

    @property
    def dim(self) -> int:
        d = 1
        for _, n in self.factors:
            d *= n
        return d

    def tensor(self, other: "TensorSpace") -> "TensorSpace":
        return TensorSpace(self.factors + other.factors)

    def dirsum(self, other: "TensorSpace") -> "TensorSpace":
        name = "+".join([f"{n}:{d}" for n, d in self.factors + other.factors])
        return TensorSpace(((name, self.dim + other.dim),))

    def factor_dim(self, name: str) -> int:
        for n, d in self.factors:
            if n == name:
                return d
        raise KeyError(name)


@dataclass(frozen=True)
class Quaternion:
    """q = a + b i + c j + d k."""

    a: float
    b: float
    c: float
    d: float

    def embed(self):
        """Canonical 2x2 complex embedding [[a+ib, c+id], [-c+id, a-ib]]."""
        a, b, c, d = self.a, self.b, self.c, self.d
        return np.array(
            [[a + 1j * b, c + 1j * d], [-c + 1j * d, a - 1j * b]], dtype=complex
        )

    def conjugate(self):
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm(self):
        return float(np.sqrt(self.a**2 + self.b**2 + self.c**2 + self.d**2))

    def __add__(self, other):
        return Quaternion(
            self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d
        )

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(
                self.a * other, self.b * other, self.c * other, self.d * other
            )
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    __rmul__ = __mul__


def quat_matrix_embed(entries):
    """Embed an n x n array of Quaternions into a 2n x 2n complex matrix."""
    n = len(entries)
    out = np.zeros((2 * n, 2 * n), dtype=complex)
    for i in range(n):
        for j in range(n):
            out[2 * i : 2 * i + 2, 2 * j : 2 * j + 2] = entries[i][j].embed()
    return out


class AntilinearOp:
    """A real structure J stored as (unitary K, conjugation): v -> K conj(v)."""

    def __init__(self, k, tol=DEFAULT_TOL):
        k = np.asarray(k, dtype=complex)
        if k.ndim != 2 or k.shape[0] != k.shape[1]:
            raise DimensionMismatch(f"K must be square, got {k.shape}")
        if frob(k @ dagger(k) - np.eye(k.shape[0])) > tol * k.shape[0]:
            raise NonUnitary("K is not unitary within tolerance")
        self.K = k
        self.dim = k.shape[0]

    def apply(self, v):
        return self.K @ np.conj(v)

    def conjugate(self, t):
        """J T J^{-1} = K conj(T) K^dag."""
        return self.K @ np.conj(t) @ dagger(self.K)

    def opposite(self, t):
        """T^o = J T^dag J^{-1} = K T^T K^dag."""
        t = np.asarray(t)
        if t.shape != (self.dim, self.dim):
            raise DimensionMismatch(f"operator shape {t.shape} vs J dim {self.dim}")
        return self.K @ t.T @ dagger(self.K)

    def square_sign(self, tol=DEFAULT_TOL):
        """epsilon with J^2 = epsilon * 1; raises if J^2 is not a sign."""
        jj = self.K @ np.conj(self.K)
        for eps in (1.0, -1.0):
            if frob(jj - eps * np.eye(self.dim)) < tol * self.dim:
                return eps
        raise NonUnitary("J^2 is not +/-1 within tolerance")

    def commutator_residual(self, t):
        """Frobenius norm of JT - TJ as antilinear maps: |K conj(T) - T K|."""
        return frob(self.K @ np.conj(t) - t @ self.K)

    def anticommutator_residual(self, t):
        return frob(self.K @ np.conj(t) + t @ self.K)

    def tensor(self, other: "AntilinearOp") -> "AntilinearOp":
        return AntilinearOp(np.kron(self.K, other.K))

    def dirsum(self, other: "AntilinearOp") -> "AntilinearOp":
        return AntilinearOp(dirsum(self.K, other.K))


def opposite(t, j: AntilinearOp):
    """T^o = J T^dag J^{-1}."""
    return j.opposite(t)


class RealSubspace:
    """Orthonormal real-linear span of complex matrices under Re tr(X^dag Y).

    The basis is orthonormal; membership and projection are relative to the
    stored tolerance.
    """

    def __init__(self, shape, basis_rows=None, tol=DEFAULT_TOL):
        self.shape = tuple(shape)
        self.tol = tol
        n = 2 * self.shape[0] * self.shape[1]
        if basis_rows is None:
            basis_rows = np.zeros((0, n))
        self._rows = basis_rows

    @property
    def dim(self) -> int:
        return self._rows.shape[0]

    @property
    def ambient_dim(self) -> int:
        return self.shape[0]

    @property
    def basis(self):
        return [unvec_real(r, self.shape) for r in self._rows]

    def _check_shape(self, t):
        t = np.asarray(t, dtype=complex)
        if t.shape != self.shape:
            raise DimensionMismatch(f"matrix shape {t.shape} vs span shape {self.shape}")
        return t

    def project(self, t):
        t = self._check_shape(t)
        v = vec_real(t)
        coeffs = self._rows @ v
        return unvec_real(self._rows.T @ coeffs, self.shape)

    def coefficients(self, t):
        return self._rows @ vec_real(self._check_shape(t))

    def residual(self, t):
        """Frobenius distance from t to its projection."""
        t = self._check_shape(t)
        v = vec_real(t)
        coeffs = self._rows @ v
        return float(np.linalg.norm(v - self._rows.T @ coeffs))

    def contains(self, t, tol=None):
        """True iff distance to the projection is < tol * |t|."""
        t = self._check_shape(t)
        tol = self.tol if tol is None else tol
        nt = frob(t)
        if nt == 0.0:
            return True
        return self.residual(t) < tol * max(nt, 1.0)

    def extended(self, mats):
        """New subspace with mats appended through modified Gram-Schmidt."""
        rows = [self._rows[i] for i in range(self.dim)]
        added = 0
        for m in mats:
            m = self._check_shape(m)
            v = vec_real(m)
            n0 = np.linalg.norm(v)
            if n0 <= self.tol * 1e-6 or n0 == 0.0:
                continue
            v = v / n0
            # two MGS sweeps keep orthogonality well below tol
            for _ in range(2):
                for r in rows:
                    v = v - (r @ v) * r
            nr = np.linalg.norm(v)
            if nr > self.tol:
                rows.append(v / nr)
                added += 1
        out = RealSubspace(self.shape, np.array(rows) if rows else None, self.tol)
        out._added = added
        return out

    def gram_residual(self):
        g = self._rows @ self._rows.T
        return frob(g - np.eye(self.dim))


def real_span(generators, tol=DEFAULT_TOL, shape=None):
    """Orthonormal basis of the real span of the generators.

    Each generator is scaled to unit Frobenius norm before modified
    Gram-Schmidt with norm cutoff tol, so the rank decision is scale-free.
    An empty generator list yields the zero subspace (shape required then).
    """
    generators = list(generators)
    if not generators:
        if shape is None:
            raise DimensionMismatch("empty generator list needs an explicit shape")
        return RealSubspace(shape, tol=tol)
    first = np.asarray(generators[0], dtype=complex)
    span = RealSubspace(first.shape, tol=tol)
    return span.extended(generators)


def span_contains(s: RealSubspace, t, tol=None) -> bool:
    return s.contains(t, tol=tol)
