"""Dirac operators, represented one-form modules, order-condition checks,
and minimal/general/associative fluctuation spaces, all computed by span
closure over the real Hilbert-Schmidt pairing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .backgrounds import (
    BiRepresentation,
    CheckResult,
    FiniteBackground,
    check_C0,
)
from .errors import (
    C1Violation,
    ConfigurationViolation,
    DepthExceeded,
    NotAssociative,
    ValidationError,
)
from .gauge import MatrixLieAlgebra, gauge_algebra, is_perfect, lie_pi
from .linalg import (
    RealSubspace,
    anticomm,
    comm,
    dagger,
    frob,
    jordan_circ,
    real_span,
)

CHIRAL_NAMES = ("R", "L", "Rb", "Lb")


@dataclass
class DiracOperator:
    matrix: np.ndarray
    named_blocks: dict = field(default_factory=dict)


class FiniteTriple:
    """A background together with a Dirac operator satisfying its axioms."""

    def __init__(self, background: FiniteBackground, dirac: DiracOperator,
                 associative: bool = False, name: str = "", validate=True):
        self.background = background
        self.dirac = dirac
        self.associative = associative
        self.name = name
        if validate:
            self._validate()

    @property
    def birep(self) -> BiRepresentation:
        return self.background.birep

    @property
    def algebra(self):
        return self.birep.algebra

    @property
    def tol(self):
        return self.birep.tol

    @property
    def D(self):
        return self.dirac.matrix

    def _validate(self):
        rep = self.birep
        d = self.D
        scale = max(1.0, frob(d))
        if frob(d - dagger(d)) > self.tol * scale:
            raise ValidationError("Dirac operator is not Hermitian")
        if frob(anticomm(rep.chi, d)) > self.tol * scale:
            raise ValidationError("Dirac operator does not anticommute with chi")
        if rep.J.commutator_residual(d) > self.tol * scale:
            raise ValidationError("Dirac operator does not commute with J")
        omega = self.background.omega1
        for w in exact_forms(self):
            if frob(w) > self.tol and not omega.contains(w):
                raise ValidationError("an exact one-form falls outside Omega^1")


def exact_forms(triple: FiniteTriple):
    """[D, pi(a_i)] over the algebra basis."""
    d = triple.D
    return [comm(d, p) for p in triple.birep.pi]


def _close_under_maps(seed, maps, tol, shape, max_passes):
    span = real_span(seed, tol, shape=shape)
    passes = 0
    while passes < max_passes:
        passes += 1
        extended = span.extended([m(b) for m in maps for b in span.basis])
        if extended.dim == span.dim:
            return extended, passes, True
        span = extended
    return span, passes, False


def one_form_module(triple: FiniteTriple, mode: str | None = None,
                    max_passes: int | None = None) -> RealSubspace:
    """Closure of the exact forms under the module action.

    mode "jordan" closes under X -> pi(a) o X (the Jordan module); mode
    "associative" closes under one-sided products, reproducing the
    associative bimodule of one-forms for comparison triples.
    """
    rep = triple.birep
    n = rep.hilbert_dim
    if max_passes is None:
        max_passes = 2 * n * n + 1
    if mode is None:
        mode = "associative" if triple.associative else "jordan"
    if mode == "jordan":
        maps = [lambda x, p=p: jordan_circ(p, x) for p in rep.pi]
    elif mode == "associative":
        maps = [lambda x, p=p: p @ x for p in rep.pi]
        maps += [lambda x, p=p: x @ p for p in rep.pi]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    seed = [w for w in exact_forms(triple) if frob(w) > rep.tol]
    span, passes, complete = _close_under_maps(seed, maps, rep.tol, (n, n), max_passes)
    if not complete:
        raise DepthExceeded("one-form module closure did not stabilize", span)
    return span


def check_C1(triple: FiniteTriple, omega: RealSubspace | None = None) -> CheckResult:
    """[pi(a), omega^o] = 0 over all algebra/module basis pairs."""
    rep = triple.birep
    omega = triple.background.omega1 if omega is None else omega
    worst = 0.0
    scale = max(1.0, max((frob(p) for p in rep.pi), default=1.0))
    for w in omega.basis:
        wo = rep.J.opposite(w)
        for p in rep.pi:
            worst = max(worst, frob(comm(p, wo)))
    return CheckResult(worst < rep.tol * scale, worst)


def check_weak_C1(triple: FiniteTriple, omega: RealSubspace | None = None) -> CheckResult:
    """[[pi(A), pi(A)]^o, Omega^1] stays inside Omega^1."""
    rep = triple.birep
    omega = triple.background.omega1 if omega is None else omega
    _, brackets = lie_pi(rep)
    worst = 0.0
    for g in brackets.span.basis:
        go = rep.J.opposite(g)
        for w in omega.basis:
            x = comm(go, w)
            worst = max(worst, omega.residual(x) / max(1.0, frob(x)))
    return CheckResult(worst < rep.tol, worst)


@dataclass
class FluctuationSpace:
    span: RealSubspace
    kind: str
    complete: bool = True
    block_profile: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.span.dim

    def to_dict(self):
        return {
            "kind": self.kind,
            "dim": self.dim,
            "complete": self.complete,
            "block_profile": self.block_profile,
        }


def chiral_block(matrix, i: int, j: int):
    s = matrix.shape[0] // 4
    return matrix[i * s : (i + 1) * s, j * s : (j + 1) * s]


def block_profile(span: RealSubspace, space=None, tol=1e-9) -> dict:
    """Per-chiral-block support of a span: real and complex dimensions of the
    projected block spans, for spaces whose leading factor is the chirality."""
    if space is None or not space.factors or space.factors[0][0] != "chirality":
        return {"full": {"real_dim": span.dim}}
    profile = {}
    basis = span.basis
    if not basis:
        return profile
    for i in range(4):
        for j in range(4):
            blocks = [chiral_block(b, i, j) for b in basis]
            if max(frob(b) for b in blocks) < tol:
                continue
            bspan = real_span(blocks, tol)
            stacked = np.array([b.ravel() for b in blocks])
            sv = np.linalg.svd(stacked, compute_uv=False)
            cdim = int(np.sum(sv > tol * max(1.0, sv[0])))
            profile[f"{CHIRAL_NAMES[i]}{CHIRAL_NAMES[j]}"] = {
                "real_dim": bspan.dim,
                "complex_dim": cdim,
            }
    return profile


def _fluctuation_space(triple, span, kind, complete=True):
    rep = triple.birep
    for x in span.basis:
        if frob(anticomm(rep.chi, x)) > rep.tol * 10:
            raise ValidationError(f"{kind} fluctuation does not anticommute with chi")
        if rep.J.commutator_residual(x) > rep.tol * 10:
            raise ValidationError(f"{kind} fluctuation does not commute with J")
    if kind in ("general", "associative_comparison"):
        for x in span.basis:
            if frob(x - dagger(x)) > rep.tol * 10:
                raise ValidationError(f"{kind} fluctuation is not Hermitian")
    profile = block_profile(span, rep.space, rep.tol)
    return FluctuationSpace(span, kind, complete, profile)


def minimal_fluctuations(triple: FiniteTriple, max_depth: int | None = None,
                         gauge: MatrixLieAlgebra | None = None) -> FluctuationSpace:
    """Lie module over the gauge algebra generated by the [g, D]."""
    rep = triple.birep
    n = rep.hilbert_dim
    if max_depth is None:
        max_depth = 2 * n * n + 1
    if gauge is None:
        gauge = gauge_algebra(rep)
    d = triple.D
    seed = [comm(g, d) for g in gauge.span.basis]
    seed = [s for s in seed if frob(s) > rep.tol]
    if not seed:
        span = real_span([], rep.tol, shape=(n, n))
        return _fluctuation_space(triple, span, "minimal")
    maps = [lambda x, g=g: comm(g, x) for g in gauge.span.basis]
    span, _passes, complete = _close_under_maps(seed, maps, rep.tol, (n, n), max_depth)
    if not complete:
        raise DepthExceeded(
            "minimal fluctuation closure exceeded max_depth",
            _fluctuation_space(triple, span, "minimal", complete=False),
        )
    return _fluctuation_space(triple, span, "minimal")


def general_fluctuations(triple: FiniteTriple) -> FluctuationSpace:
    """Span of [pi(a), omega] + J [pi(a), omega] J^{-1}; defined under C1."""
    rep = triple.birep
    c1 = check_C1(triple)
    if not c1:
        raise C1Violation(f"order-one condition fails (residual {c1.residual:.2e})")
    omega = triple.background.omega1
    gens = []
    for p in rep.pi:
        for w in omega.basis:
            x = comm(p, w)
            gens.append(x + rep.J.conjugate(x))
    span = real_span(gens, rep.tol, shape=(rep.hilbert_dim, rep.hilbert_dim))
    return _fluctuation_space(triple, span, "general")


def associative_fluctuations(triple: FiniteTriple) -> FluctuationSpace:
    """Span of omega + omega^o over Hermitian one-forms; comparison mode for
    associative coordinate algebras."""
    rep = triple.birep
    if not (triple.associative or triple.algebra.is_associative()):
        raise NotAssociative("the coordinate algebra is not associative")
    omega = one_form_module(triple, mode="associative")
    basis = omega.basis
    n = rep.hilbert_dim
    if not basis:
        return _fluctuation_space(
            triple, real_span([], rep.tol, shape=(n, n)), "associative_comparison"
        )
    # Hermitian subspace of the module: kernel of w -> w - w^dag within the span
    rows = np.array(
        [np.concatenate([(w - dagger(w)).real.ravel(), (w - dagger(w)).imag.ravel()])
         for w in basis]
    )
    _, sv, vt = np.linalg.svd(rows.T @ rows.T.T) if False else (None, None, None)
    u, s, vh = np.linalg.svd(rows, full_matrices=True)
    smax = s[0] if s.size and s[0] > 0 else 1.0
    rank = int(np.sum(s > rep.tol * max(1.0, smax)))
    null = u[:, rank:] if rank < len(basis) else np.zeros((len(basis), 0))
    herm = []
    for k in range(null.shape[1]):
        herm.append(sum(c * b for c, b in zip(null[:, k], basis)))
    gens = [w + rep.J.opposite(w) for w in herm]
    span = real_span(gens, rep.tol, shape=(n, n))
    return _fluctuation_space(triple, span, "associative_comparison")


@dataclass
class PostulateReport:
    checks: list

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def __bool__(self):
        return self.ok

    def to_dict(self):
        return {"pass": self.ok, "checks": [c.to_dict() for c in self.checks]}


def check_postulates(triple: FiniteTriple, fluct: FluctuationSpace,
                     samples: int = 20, seed: int = 0,
                     gauge: MatrixLieAlgebra | None = None) -> PostulateReport:
    """Sampled verification that the fluctuation space is a vector space
    containing pure-gauge fluctuations and invariant under gauge conjugation.
    """
    from .backgrounds import AxiomCheck

    rep = triple.birep
    rng = np.random.default_rng(seed)
    if gauge is None:
        gauge = gauge_algebra(rep)
    gbasis = gauge.span.basis
    fbasis = fluct.span.basis
    d = triple.D

    worst_lin = 0.0
    for _ in range(samples):
        if not fbasis:
            break
        x = sum(c * b for c, b in zip(rng.standard_normal(len(fbasis)), fbasis))
        worst_lin = max(worst_lin, fluct.span.residual(x) / max(1.0, frob(x)))

    worst_gauge = 0.0
    worst_ad = 0.0
    for _ in range(samples):
        if not gbasis:
            break
        g = sum(c * b for c, b in zip(rng.standard_normal(len(gbasis)), gbasis))
        g = g / max(1.0, frob(g))
        u = expm(g)
        pure = u @ d @ u.conj().T - d
        worst_gauge = max(worst_gauge, fluct.span.residual(pure) / max(1.0, frob(pure)))
        for f in fbasis:
            conj = u @ f @ u.conj().T
            worst_ad = max(worst_ad, fluct.span.residual(conj) / max(1.0, frob(conj)))

    tol = 1e-8
    checks = [
        AxiomCheck("vector_space_closure", worst_lin < tol, worst_lin),
        AxiomCheck("pure_gauge_membership", worst_gauge < tol, worst_gauge),
        AxiomCheck("ad_invariance", worst_ad < tol, worst_ad),
    ]
    return PostulateReport(checks)


def fluctuated_dirac(triple: FiniteTriple, f_element,
                     fluct: FluctuationSpace | None = None) -> FiniteTriple:
    """Triple with D replaced by D + F, revalidating every Dirac axiom and
    the containment of the new one-form module."""
    rep = triple.birep
    f = np.asarray(f_element, dtype=complex)
    scale = max(1.0, frob(f))
    if fluct is not None and not fluct.span.contains(f):
        raise ConfigurationViolation("fluctuation_membership", fluct.span.residual(f))
    wc1 = check_weak_C1(triple)
    if not wc1:
        raise ConfigurationViolation("weak_order_one", wc1.residual)
    new_d = triple.D + f
    r = frob(new_d - dagger(new_d))
    if r > triple.tol * scale:
        raise ConfigurationViolation("hermiticity", r)
    r = frob(anticomm(rep.chi, new_d))
    if r > triple.tol * scale:
        raise ConfigurationViolation("oddness", r)
    r = rep.J.commutator_residual(new_d)
    if r > triple.tol * scale:
        raise ConfigurationViolation("real_structure", r)
    new_dirac = DiracOperator(new_d, dict(triple.dirac.named_blocks))
    new_triple = FiniteTriple(
        triple.background, new_dirac, triple.associative, triple.name, validate=False
    )
    omega = triple.background.omega1
    new_module = one_form_module(new_triple)
    for w in new_module.basis:
        if not omega.contains(w):
            raise ConfigurationViolation("one_form_containment", omega.residual(w))
    return new_triple


@dataclass
class AlmostAssociativeDecomposition:
    """Finite factors of the fluctuation space of a product triple: the gauge
    component (to be tensored with continuum one-forms) and the finite Higgs
    component, with the perfectness flag that governs equality."""

    gauge_component: MatrixLieAlgebra
    higgs_component: FluctuationSpace
    perfect: bool
    gauge_tag: str = "continuum_one_forms (x) gauge"
    higgs_tag: str = "functions (x) finite_higgs"

    def to_dict(self):
        return {
            "gauge_dim": self.gauge_component.dim,
            "gauge_tag": self.gauge_tag,
            "higgs": self.higgs_component.to_dict(),
            "higgs_tag": self.higgs_tag,
            "perfect": self.perfect,
        }


def almost_associative_fluctuations(triple: FiniteTriple) -> AlmostAssociativeDecomposition:
    gauge = gauge_algebra(triple.birep)
    higgs = minimal_fluctuations(triple, gauge=gauge)
    return AlmostAssociativeDecomposition(gauge, higgs, is_perfect(gauge))


def form_action(rep: BiRepresentation, w):
    """S on represented one-forms: (pi(w) - pi(w)^o)/2."""
    return 0.5 * (w - rep.J.opposite(w))
