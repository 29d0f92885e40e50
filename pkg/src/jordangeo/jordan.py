"""Finite-dimensional special Jordan algebras realized as matrix spaces.

Constructors cover the classification list: hermitian matrices over R, C, H,
spin factors, and direct sums. The SM coordinate algebra reuses the same
container with hermitian=False since a real associative matrix algebra is
closed under the symmetrized product as well.
"""

from __future__ import annotations

import re

import numpy as np

from .errors import DimensionMismatch, ExceptionalSummand, ValidationError
from .linalg import (
    DEFAULT_TOL,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    Quaternion,
    dirsum,
    frob,
    jordan_circ,
    quat_matrix_embed,
    real_span,
    vec_real,
)


def summand_dim(tag: str) -> int:
    """Real dimension of a classification-list summand tag."""
    if tag == "R":
        return 1
    m = re.fullmatch(r"JSpin\((\d+)\)", tag)
    if m:
        return int(m.group(1)) + 1
    m = re.fullmatch(r"H\((\d+),([RCH])\)", tag)
    if m:
        n = int(m.group(1))
        field = m.group(2)
        return {"R": n * (n + 1) // 2, "C": n * n, "H": n * (2 * n - 1)}[field]
    if re.fullmatch(r"H\(\d+,O\)", tag):
        raise ExceptionalSummand("exceptional summand unsupported")
    raise ValidationError(f"unknown summand tag {tag!r}")


class JordanAlgebra:
    """A basis of matrices closed under the symmetrized product.

    For classification-list constructions the basis is Hermitian and the
    algebra is formally real; hermitian=False marks associative coordinate
    algebras (the SM) that are only Jordan under the symmetrized product.
    """

    def __init__(self, basis, unit, summands, hermitian=True, tol=DEFAULT_TOL,
                 validate=True):
        self.basis = [np.asarray(b, dtype=complex) for b in basis]
        self.unit = np.asarray(unit, dtype=complex)
        self.summands = tuple(summands)
        self.hermitian = hermitian
        self.tol = tol
        self._vec = np.array([vec_real(b) for b in self.basis])
        self._pinv = np.linalg.pinv(self._vec.T)
        self._circ_table = None
        if validate:
            self._validate()

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def matrix_dim(self) -> int:
        return self.unit.shape[0]

    def _validate(self):
        span = real_span(self.basis, self.tol)
        if span.dim != self.dim:
            raise ValidationError(
                f"basis is not R-linearly independent ({span.dim} < {self.dim})"
            )
        scale = max(frob(b) for b in self.basis)
        for i, b in enumerate(self.basis):
            if self.hermitian and frob(b - b.conj().T) > self.tol * scale:
                raise ValidationError(f"basis element {i} is not Hermitian")
            if frob(jordan_circ(self.unit, b) - b) > self.tol * scale:
                raise ValidationError(f"unit does not fix basis element {i}")
            for c in self.basis:
                if not span.contains(jordan_circ(b, c)):
                    raise ValidationError("basis is not closed under the product")
        if self.hermitian and self.summands:
            expected = sum(summand_dim(t) for t in self.summands)
            if expected != self.dim:
                raise ValidationError(
                    f"summand dims sum to {expected}, basis has {self.dim}"
                )

    def coordinates(self, m):
        """Real coefficients of m in the basis; raises if m is outside the span."""
        v = vec_real(np.asarray(m, dtype=complex))
        coeffs = self._pinv @ v
        resid = np.linalg.norm(self._vec.T @ coeffs - v)
        if resid > self.tol * max(1.0, np.linalg.norm(v)):
            raise ValidationError(f"matrix is not in the algebra (residual {resid:.2e})")
        return coeffs

    def element(self, coords):
        out = np.zeros_like(self.unit)
        for c, b in zip(coords, self.basis):
            out = out + c * b
        return out

    def circ_coords(self, i: int, j: int):
        """Coefficients of basis_i o basis_j in the basis (cached)."""
        if self._circ_table is None:
            self._circ_table = {}
        key = (i, j) if i <= j else (j, i)
        if key not in self._circ_table:
            self._circ_table[key] = self.coordinates(
                jordan_circ(self.basis[key[0]], self.basis[key[1]])
            )
        return self._circ_table[key]

    def random_element(self, rng, scale=1.0):
        return self.element(scale * rng.standard_normal(self.dim))

    def is_associative(self) -> bool:
        """True iff the basis span is closed under the plain matrix product."""
        span = real_span(self.basis, self.tol)
        return all(
            span.contains(b @ c) for b in self.basis for c in self.basis
        )


def herm_jordan(n: int, field: str) -> JordanAlgebra:
    """H_n(K) for K in {R, C, H}; quaternionic matrices embed as 2n x 2n complex."""
    if n < 1:
        raise ValidationError("n must be >= 1")
    if field == "O":
        raise ExceptionalSummand("exceptional summand unsupported")
    if field not in ("R", "C", "H"):
        raise ValidationError(f"unknown field {field!r}")
    basis = []
    if field in ("R", "C"):
        for i in range(n):
            e = np.zeros((n, n), dtype=complex)
            e[i, i] = 1.0
            basis.append(e)
        for i in range(n):
            for j in range(i + 1, n):
                s = np.zeros((n, n), dtype=complex)
                s[i, j] = s[j, i] = 1.0
                basis.append(s)
                if field == "C":
                    a = np.zeros((n, n), dtype=complex)
                    a[i, j] = -1j
                    a[j, i] = 1j
                    basis.append(a)
        unit = np.eye(n, dtype=complex)
    else:
        zero = Quaternion(0.0, 0.0, 0.0, 0.0)
        one = Quaternion(1.0, 0.0, 0.0, 0.0)
        units = [
            one,
            Quaternion(0.0, 1.0, 0.0, 0.0),
            Quaternion(0.0, 0.0, 1.0, 0.0),
            Quaternion(0.0, 0.0, 0.0, 1.0),
        ]
        def qmat(fill):
            rows = [[zero] * n for _ in range(n)]
            for (i, j, q) in fill:
                rows[i][j] = q
            return quat_matrix_embed(rows)

        for i in range(n):
            basis.append(qmat([(i, i, one)]))
        for i in range(n):
            for j in range(i + 1, n):
                for q in units:
                    basis.append(qmat([(i, j, q), (j, i, q.conjugate())]))
        unit = qmat([(i, i, one) for i in range(n)])
    tag = f"H({n},{field})"
    return JordanAlgebra(basis, unit, (tag,))


def jspin(n: int) -> JordanAlgebra:
    """Spin factor JSpin(n): span{1, e_1..e_n} with e_i o e_j = delta_ij.

    The e_i come from a fixed Pauli tensor tower (e1 = sx, e2 = sy,
    e3 = sz (x) sx, ...; odd n closes with the pure sz string), so repeated
    runs produce identical matrices. For n = 2 this reproduces the
    [[x, z*], [z, x]] embedding used by the BF model.
    """
    if n < 1:
        raise ValidationError("n must be >= 1")
    if n == 1:
        gammas = [PAULI_X]
        qubits = 1
    else:
        qubits = n // 2
        gammas = []
        for j in range(n // 2):
            pre = [PAULI_Z] * j
            post = [np.eye(2)] * (qubits - j - 1)
            for mid in (PAULI_X, PAULI_Y):
                mats = pre + [mid] + post
                g = mats[0]
                for m in mats[1:]:
                    g = np.kron(g, m)
                gammas.append(g)
        if n % 2 == 1:
            g = PAULI_Z
            for _ in range(qubits - 1):
                g = np.kron(g, PAULI_Z)
            gammas.append(g)
    d = 2**qubits
    basis = [np.eye(d, dtype=complex)] + [g.astype(complex) for g in gammas]
    return JordanAlgebra(basis, np.eye(d, dtype=complex), (f"JSpin({n})",))


def real_line() -> JordanAlgebra:
    """The one-dimensional summand R."""
    one = np.eye(1, dtype=complex)
    return JordanAlgebra([one], one, ("R",))


def direct_sum(algebras) -> JordanAlgebra:
    """Block-diagonal direct sum; basis ordered summand by summand."""
    algebras = list(algebras)
    if not algebras:
        raise ValidationError("direct_sum needs at least one summand")
    dims = [a.matrix_dim for a in algebras]
    basis = []
    for k, alg in enumerate(algebras):
        for b in alg.basis:
            blocks = [
                b if i == k else np.zeros((d, d), dtype=complex)
                for i, d in enumerate(dims)
            ]
            basis.append(dirsum(*blocks))
    unit = dirsum(*[a.unit for a in algebras])
    summands = tuple(t for a in algebras for t in a.summands)
    hermitian = all(a.hermitian for a in algebras)
    return JordanAlgebra(basis, unit, summands, hermitian=hermitian)


def check_jordan_identity(algebra: JordanAlgebra, trials: int = 50,
                          seed: int = 0, tol=None) -> bool:
    """(a^2 o b) o a = a^2 o (b o a) on seeded random pairs and basis pairs."""
    tol = algebra.tol if tol is None else tol
    rng = np.random.default_rng(seed)
    pairs = [(a, b) for a in algebra.basis for b in algebra.basis]
    for _ in range(trials):
        pairs.append((algebra.random_element(rng), algebra.random_element(rng)))
    for a, b in pairs:
        a2 = a @ a
        lhs = jordan_circ(jordan_circ(a2, b), a)
        rhs = jordan_circ(a2, jordan_circ(b, a))
        scale = max(1.0, frob(a) ** 2 * frob(b) * frob(a))
        if frob(lhs - rhs) > tol * scale:
            return False
    return True


def check_formally_real(algebra: JordanAlgebra, trials: int = 50,
                        seed: int = 0, tol=None) -> bool:
    """Sampled check that a vanishing sum of squares forces zero summands.

    Hermitian realizations satisfy tr(a^2) = |a|_F^2 exactly, which is
    verified on samples; otherwise basis elements and sampled combinations
    are scanned for nilpotents.
    """
    tol = algebra.tol if tol is None else tol
    rng = np.random.default_rng(seed)
    scale = max(frob(b) for b in algebra.basis)
    hermitian = all(frob(b - b.conj().T) < tol * scale for b in algebra.basis)
    if hermitian:
        for _ in range(trials):
            a = algebra.random_element(rng)
            if abs(np.real(np.trace(a @ a)) - frob(a) ** 2) > tol * max(
                1.0, frob(a) ** 2
            ):
                return False
        return True
    candidates = list(algebra.basis)
    for _ in range(trials):
        candidates.append(algebra.random_element(rng))
    for a in candidates:
        na = frob(a)
        if na > np.sqrt(tol) and frob(a @ a) < tol * na * na:
            return False
    return True
