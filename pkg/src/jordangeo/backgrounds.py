"""Bi-representations (pi, pi^o, S), real structure and grading checks,
background axiom reports, and the unitary lift.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import C0Violation, NonUnitary, NotAntiHermitian, ValidationError
from .jordan import JordanAlgebra
from .linalg import (
    DEFAULT_TOL,
    AntilinearOp,
    RealSubspace,
    TensorSpace,
    anticomm,
    comm,
    dagger,
    frob,
    jordan_circ,
    real_span,
)


@dataclass
class CheckResult:
    ok: bool
    residual: float

    def __bool__(self):
        return self.ok

    def to_dict(self):
        return {"pass": self.ok, "residual": float(f"{self.residual:.6e}")}


@dataclass
class AxiomCheck:
    axiom: str
    ok: bool
    residual: float

    def to_dict(self):
        return {
            "axiom": self.axiom,
            "pass": self.ok,
            "residual": float(f"{self.residual:.6e}"),
        }


@dataclass
class BackgroundReport:
    checks: list[AxiomCheck]
    signs: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __bool__(self):
        return self.ok

    def to_dict(self):
        return {
            "pass": self.ok,
            "signs": self.signs,
            "checks": [c.to_dict() for c in self.checks],
        }


class BiRepresentation:
    """An associative representation pi of a coordinate algebra on H together
    with the real structure J and grading chi.

    pi is given by the images of the algebra basis and extended R-linearly.
    """

    def __init__(self, algebra: JordanAlgebra, pi, j: AntilinearOp, chi,
                 space: TensorSpace | None = None, tol=DEFAULT_TOL, validate=True):
        self.algebra = algebra
        self.pi = [np.asarray(p, dtype=complex) for p in pi]
        self.J = j
        self.chi = np.asarray(chi, dtype=complex)
        self.space = space
        self.tol = tol
        self.hilbert_dim = self.chi.shape[0]
        self._opposite = None
        self._sym = None
        self._pi_span = None
        if validate:
            self._validate()

    def _validate(self):
        if len(self.pi) != self.algebra.dim:
            raise ValidationError("pi must list one image per algebra basis element")
        if self.J.dim != self.hilbert_dim:
            raise ValidationError("J and chi act on different spaces")
        span = self.pi_span()
        if span.dim != self.algebra.dim:
            raise ValidationError("pi is not injective on the algebra")
        scale = max(frob(p) for p in self.pi)
        for i in range(self.algebra.dim):
            for k in range(i, self.algebra.dim):
                prod = jordan_circ(self.pi[i], self.pi[k])
                expected = self.represent_coords(self.algebra.circ_coords(i, k))
                if frob(prod - expected) > self.tol * max(1.0, scale**2):
                    raise ValidationError(
                        "pi does not preserve the symmetrized product"
                    )
        if frob(self.chi @ self.chi - np.eye(self.hilbert_dim)) > self.tol * self.hilbert_dim:
            raise ValidationError("chi^2 != 1")
        for p in self.pi:
            if frob(comm(self.chi, p)) > self.tol * max(1.0, scale):
                raise ValidationError("chi does not commute with pi")
        self.J.square_sign(self.tol)
        self.grading_sign()

    @property
    def epsilon(self) -> float:
        return self.J.square_sign(self.tol)

    def grading_sign(self) -> float:
        """epsilon'' with J chi = epsilon'' chi J."""
        for sign in (1.0, -1.0):
            if frob(self.J.K @ np.conj(self.chi) - sign * self.chi @ self.J.K) < (
                self.tol * self.hilbert_dim
            ):
                return sign
        raise ValidationError("J chi != +/- chi J")

    def pi_span(self) -> RealSubspace:
        if self._pi_span is None:
            self._pi_span = real_span(self.pi, self.tol)
        return self._pi_span

    def represent_coords(self, coords):
        out = np.zeros((self.hilbert_dim, self.hilbert_dim), dtype=complex)
        for c, p in zip(coords, self.pi):
            out = out + c * p
        return out

    def represent(self, m):
        """pi of an algebra element given as a coordinate matrix."""
        return self.represent_coords(self.algebra.coordinates(m))

    def opposite_images(self):
        if self._opposite is None:
            self._opposite = [self.J.opposite(p) for p in self.pi]
        return self._opposite

    def sym_images(self):
        if self._sym is None:
            po = self.opposite_images()
            self._sym = [0.5 * (p + q) for p, q in zip(self.pi, po)]
        return self._sym


def check_C0(rep: BiRepresentation) -> CheckResult:
    """[pi(a), pi(b)^o] = 0 on all basis pairs."""
    po = rep.opposite_images()
    scale = max(max(frob(p) for p in rep.pi), 1.0)
    worst = 0.0
    for p in rep.pi:
        for q in po:
            worst = max(worst, frob(comm(p, q)))
    return CheckResult(worst < rep.tol * scale**2, worst)


def opposite_rep(rep: BiRepresentation):
    """pi^o(basis) = J pi(basis)^dag J^{-1}; checked to be an associative
    specialization itself."""
    po = rep.opposite_images()
    scale = max(frob(p) for p in po)
    for i in range(rep.algebra.dim):
        for k in range(i, rep.algebra.dim):
            prod = jordan_circ(po[i], po[k])
            coords = rep.algebra.circ_coords(i, k)
            expected = sum(c * q for c, q in zip(coords, po))
            if frob(prod - expected) > rep.tol * max(1.0, scale**2):
                raise ValidationError("pi^o fails the symmetrized product")
    return po


def symmetrized(rep: BiRepresentation):
    """S = (pi + pi^o)/2, the multiplicative representation; needs C0."""
    c0 = check_C0(rep)
    if not c0:
        raise C0Violation(f"order-zero condition fails (residual {c0.residual:.2e})")
    return rep.sym_images()


def _circ_coords_vec(algebra: JordanAlgebra, coords, j: int):
    """Coefficients of (sum_i coords_i b_i) o b_j in the basis."""
    out = np.zeros(algebra.dim)
    for i, c in enumerate(coords):
        if c != 0.0:
            out = out + c * algebra.circ_coords(i, j)
    return out


def check_multiplicative(s_images, algebra: JordanAlgebra, tol=DEFAULT_TOL) -> CheckResult:
    """Both linearized multiplicative-specialization identities plus the
    associator identity [[S_x, S_y], S_z] = S_{[y,z,x]} on all basis triples.
    """
    d = algebra.dim
    s = [np.asarray(m, dtype=complex) for m in s_images]
    prod = [[s[i] @ s[j] for j in range(d)] for i in range(d)]
    s_of = lambda coords: sum(c * m for c, m in zip(coords, s))
    circ_s = [[s_of(algebra.circ_coords(i, j)) for j in range(d)] for i in range(d)]
    scale = max(1.0, max(frob(m) for m in s) ** 3)
    worst = 0.0
    for a in range(d):
        for b in range(d):
            for c in range(d):
                r1 = (
                    comm(s[a], circ_s[b][c])
                    + comm(s[c], circ_s[a][b])
                    + comm(s[b], circ_s[c][a])
                )
                worst = max(worst, frob(r1))
                ac_b = s_of(_circ_coords_vec(algebra, algebra.circ_coords(a, c), b))
                r2 = (
                    prod[a][b] @ s[c]
                    + prod[c][b] @ s[a]
                    + ac_b
                    - s[a] @ circ_s[b][c]
                    - s[b] @ circ_s[a][c]
                    - s[c] @ circ_s[a][b]
                )
                worst = max(worst, frob(r2))
                assoc = _circ_coords_vec(
                    algebra, algebra.circ_coords(b, c), a
                ) - _circ_coords_vec(algebra, algebra.circ_coords(c, a), b)
                # [y,z,x] = (y o z) o x - y o (z o x), here (x,y,z) = (a,b,c)
                r3 = comm(comm(s[a], s[b]), s[c]) - s_of(assoc)
                worst = max(worst, frob(r3))
    return CheckResult(worst < tol * scale, worst)


def upsilon(rep: BiRepresentation, u):
    """Lift of a unitary u: u J u J^{-1}."""
    u = np.asarray(u, dtype=complex)
    if frob(u @ dagger(u) - np.eye(u.shape[0])) > rep.tol * u.shape[0]:
        raise NonUnitary("upsilon input is not unitary")
    return u @ rep.J.conjugate(u)


def d_upsilon(rep: BiRepresentation, a):
    """Differential of the lift at the identity: a - a^o (a anti-Hermitian)."""
    a = np.asarray(a, dtype=complex)
    if frob(a + dagger(a)) > rep.tol * max(1.0, frob(a)):
        raise NotAntiHermitian("d_upsilon input must be anti-Hermitian")
    return a - rep.J.opposite(a)


class FiniteBackground:
    """Bi-representation plus the background one-form module."""

    def __init__(self, birep: BiRepresentation, omega1: RealSubspace):
        self.birep = birep
        self.omega1 = omega1

    @property
    def tol(self):
        return self.birep.tol


def check_background(bg: FiniteBackground) -> BackgroundReport:
    """Structured pass/fail report of every background axiom with the worst
    residual norm for each."""
    rep = bg.birep
    tol = rep.tol
    n = rep.hilbert_dim
    checks = []
    scale = max(max(frob(p) for p in rep.pi), 1.0)

    span = rep.pi_span()
    missing = float(rep.algebra.dim - span.dim)
    checks.append(AxiomCheck("faithful", missing == 0.0, missing))

    worst = 0.0
    for i in range(rep.algebra.dim):
        for k in range(i, rep.algebra.dim):
            prod = jordan_circ(rep.pi[i], rep.pi[k])
            worst = max(
                worst,
                frob(prod - rep.represent_coords(rep.algebra.circ_coords(i, k))),
            )
    checks.append(
        AxiomCheck("associative_specialization", worst < tol * scale**2, worst)
    )

    c0 = check_C0(rep)
    checks.append(AxiomCheck("order_zero", c0.ok, c0.residual))

    r = frob(rep.chi @ rep.chi - np.eye(n))
    checks.append(AxiomCheck("grading_square", r < tol * n, r))

    worst = max(frob(comm(rep.chi, p)) for p in rep.pi)
    checks.append(AxiomCheck("grading_commutes_algebra", worst < tol * scale, worst))

    signs = {}
    jj = rep.J.K @ np.conj(rep.J.K)
    r_plus = frob(jj - np.eye(n))
    r_minus = frob(jj + np.eye(n))
    eps = 1.0 if r_plus <= r_minus else -1.0
    r = min(r_plus, r_minus)
    checks.append(AxiomCheck("real_structure_square", r < tol * n, r))
    signs["epsilon"] = eps

    r_plus = frob(rep.J.K @ np.conj(rep.chi) - rep.chi @ rep.J.K)
    r_minus = frob(rep.J.K @ np.conj(rep.chi) + rep.chi @ rep.J.K)
    epp = 1.0 if r_plus <= r_minus else -1.0
    r = min(r_plus, r_minus)
    checks.append(AxiomCheck("real_structure_grading", r < tol * n, r))
    signs["epsilon_dd"] = epp

    omega_basis = bg.omega1.basis
    if omega_basis:
        worst = max(frob(anticomm(rep.chi, w)) for w in omega_basis)
    else:
        worst = 0.0
    checks.append(AxiomCheck("one_forms_odd", worst < tol * max(scale, 1.0), worst))

    worst = 0.0
    for p in rep.pi:
        for w in omega_basis:
            worst = max(worst, bg.omega1.residual(jordan_circ(p, w)))
    checks.append(AxiomCheck("one_forms_module", worst < tol * scale, worst))

    return BackgroundReport(checks, signs)


def doubled_birep(algebra: JordanAlgebra, tol=DEFAULT_TOL) -> BiRepresentation:
    """Canonical order-zero bi-representation of a matrix algebra on H (x) H:
    pi(a) = a (x) 1 with J the flip composed with conjugation."""
    d = algebra.matrix_dim
    eye = np.eye(d, dtype=complex)
    swap = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            swap[i * d + j, j * d + i] = 1.0
    pi = [np.kron(b, eye) for b in algebra.basis]
    space = TensorSpace((("left", d), ("right", d)))
    return BiRepresentation(
        algebra, pi, AntilinearOp(swap), np.eye(d * d, dtype=complex), space, tol
    )
