"""Generalized fusion systems ``{(V_i, Lambda_i, v_i)}`` and their operators.

A system lives in ``H = C^n``; component ``i`` carries a subspace ``V_i``, an
operator ``Lambda_i: C^n -> C^{d_i}`` and a positive weight ``v_i``. Every sum
over components runs in component order.
"""
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from gff import _backend
from gff.errors import (
    DimensionMismatch,
    LocalSpaceMismatch,
    NonPositiveWeight,
    NotAFrame,
)
from gff.linalg import (
    DEFAULT_TOL,
    as_matrix,
    as_vector,
    hermitian_eigh,
    operator_norm_2,
)
from gff.subspace import ClosedSubspace, image_under

DEFAULT_CLASS_TOL = 1e-8

FRAME = "frame"
TIGHT = "tight"
PARSEVAL = "parseval"
BESSEL_ONLY = "bessel_only"
KINDS = (FRAME, TIGHT, PARSEVAL, BESSEL_ONLY)


@dataclass(frozen=True, eq=False)
class GFusionComponent:
    subspace: ClosedSubspace
    operator: np.ndarray
    weight: float

    def __post_init__(self):
        op = np.array(as_matrix(self.operator, "operator"))
        if op.shape[0] == 0:
            raise DimensionMismatch("local space dimension must be positive")
        if op.shape[1] != self.subspace.ambient_dim:
            raise DimensionMismatch(
                f"operator has {op.shape[1]} columns, subspace lives in "
                f"C^{self.subspace.ambient_dim}"
            )
        weight = float(self.weight)
        if not (np.isfinite(weight) and weight > 0):
            raise NonPositiveWeight(f"weight must be positive, got {self.weight!r}")
        op.setflags(write=False)
        object.__setattr__(self, "operator", op)
        object.__setattr__(self, "weight", weight)

    @property
    def local_dim(self):
        return self.operator.shape[0]

    @cached_property
    def restricted(self):
        """``Lambda_i P_{V_i}`` as a dense ``d_i x n`` matrix."""
        m = self.operator @ self.subspace.projection
        m.setflags(write=False)
        return m


@dataclass(frozen=True, eq=False)
class GFusionSystem:
    """Ordered, nonempty, finite family of :class:`GFusionComponent`."""

    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("a system needs at least one component")
        n = comps[0].subspace.ambient_dim
        for idx, c in enumerate(comps):
            if c.subspace.ambient_dim != n:
                raise DimensionMismatch(
                    f"component {idx} lives in C^{c.subspace.ambient_dim}, expected C^{n}"
                )
        object.__setattr__(self, "components", comps)

    @classmethod
    def from_triples(cls, triples, tol=DEFAULT_TOL):
        """Build from ``(subspace, operator, weight)`` triples.

        ``subspace`` may be a :class:`ClosedSubspace` or a spanning matrix
        (columns need not be orthonormal).
        """
        comps = []
        for idx, (sub, op, w) in enumerate(triples):
            if not isinstance(sub, ClosedSubspace):
                sub = ClosedSubspace.span(sub, tol)
            try:
                comps.append(GFusionComponent(sub, op, w))
            except NonPositiveWeight as exc:
                raise NonPositiveWeight(f"component {idx}: {exc}") from None
        return cls(tuple(comps))

    @property
    def ambient_dim(self):
        return self.components[0].subspace.ambient_dim

    @property
    def local_dims(self):
        return tuple(c.local_dim for c in self.components)

    @property
    def weights(self):
        return np.array([c.weight for c in self.components])

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def appended(self, component):
        return GFusionSystem(self.components + (component,))

    @cached_property
    def _stacked(self):
        rows = np.ascontiguousarray(np.vstack([c.restricted for c in self.components]))
        offsets = np.zeros(len(self) + 1, dtype=np.intp)
        offsets[1:] = np.cumsum(self.local_dims)
        rows.setflags(write=False)
        offsets.setflags(write=False)
        return rows, offsets

    def __repr__(self):
        return (
            f"GFusionSystem(ambient_dim={self.ambient_dim}, "
            f"local_dims={self.local_dims})"
        )


@dataclass(frozen=True)
class CoefficientFamily:
    """Finite element ``{f_i}`` of the direct sum of the local spaces."""

    blocks: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "blocks", tuple(as_vector(b, f"block {i}") for i, b in enumerate(self.blocks))
        )

    def inner(self, other):
        """``sum_i <f_i, g_i>``, linear in the first argument."""
        self._check_shapes(other)
        return complex(sum(np.vdot(g, f) for f, g in zip(self.blocks, other.blocks)))

    def norm(self):
        return float(np.sqrt(sum(np.vdot(b, b).real for b in self.blocks)))

    def conforms_to(self, system):
        return tuple(len(b) for b in self.blocks) == system.local_dims

    def _check_shapes(self, other):
        if [len(b) for b in self.blocks] != [len(b) for b in other.blocks]:
            raise DimensionMismatch("coefficient families have different block shapes")

    def __len__(self):
        return len(self.blocks)


@dataclass(frozen=True)
class FrameBounds:
    lower: float
    upper: float
    kind: str

    @property
    def is_frame(self):
        return self.kind != BESSEL_ONLY


def classify(lower, upper, class_tol=DEFAULT_CLASS_TOL):
    """Frame kind of the optimal bounds ``(lower, upper)``.

    ``bessel_only`` when ``lower <= class_tol * upper``; ``tight`` when the
    bounds agree to ``class_tol * upper``; ``parseval`` when tight and
    ``|upper - 1| <= class_tol``.
    """
    if upper <= 0 or lower <= class_tol * upper:
        return BESSEL_ONLY
    if upper - lower <= class_tol * upper:
        return PARSEVAL if abs(upper - 1.0) <= class_tol else TIGHT
    return FRAME


def _check_vector(system, f):
    f = as_vector(f, "f")
    if f.shape[0] != system.ambient_dim:
        raise DimensionMismatch(f"vector has length {f.shape[0]}, expected {system.ambient_dim}")
    return f


def analysis(system, f):
    """``{v_i Lambda_i P_{V_i} f}``."""
    f = _check_vector(system, f)
    return CoefficientFamily(tuple(c.weight * (c.restricted @ f) for c in system))


def synthesis(system, coefficients):
    """``sum_i v_i P_{V_i} Lambda_i^* f_i``."""
    if not isinstance(coefficients, CoefficientFamily):
        coefficients = CoefficientFamily(tuple(coefficients))
    if not coefficients.conforms_to(system):
        raise DimensionMismatch(
            f"coefficient blocks {tuple(len(b) for b in coefficients.blocks)} do not match "
            f"local dims {system.local_dims}"
        )
    out = np.zeros(system.ambient_dim, dtype=np.complex128)
    for c, block in zip(system, coefficients.blocks):
        out += c.weight * (c.subspace.projection @ (c.operator.conj().T @ block))
    return out


def frame_operator(system):
    """``S = sum_i v_i^2 P_{V_i} Lambda_i^* Lambda_i P_{V_i}`` (n x n, Hermitian PSD)."""
    rows, offsets = system._stacked
    return _backend.weighted_gram(rows, rows, system.weights**2, offsets)


def pair_frame_operator(system_a, system_b):
    """``sum_i v_i v'_i P_{V_i} Lambda_i^* Lambda'_i P_{V'_i}`` for a conformable pair."""
    if system_a.ambient_dim != system_b.ambient_dim:
        raise DimensionMismatch(
            f"systems live in C^{system_a.ambient_dim} and C^{system_b.ambient_dim}"
        )
    if len(system_a) != len(system_b):
        raise DimensionMismatch(
            f"systems have {len(system_a)} and {len(system_b)} components"
        )
    for idx, (da, db) in enumerate(zip(system_a.local_dims, system_b.local_dims)):
        if da != db:
            raise LocalSpaceMismatch(f"component {idx}: local dims {da} and {db} differ")
    rows_a, offsets = system_a._stacked
    rows_b, _ = system_b._stacked
    return _backend.weighted_gram(rows_a, rows_b, system_a.weights * system_b.weights, offsets)


def _bounds_from_eigenvalues(w, class_tol):
    upper = max(float(w[-1]), 0.0)
    lower = min(max(float(w[0]), 0.0), upper)
    return FrameBounds(lower, upper, classify(lower, upper, class_tol))


def optimal_bounds(system, class_tol=DEFAULT_CLASS_TOL):
    """Tightest frame bounds: the extreme eigenvalues of the frame operator.

    Negative round-off in the smallest eigenvalue is clamped to zero.
    """
    w, _ = hermitian_eigh(frame_operator(system))
    return _bounds_from_eigenvalues(w, class_tol)


def inverse_frame_operator(frame_op, class_tol=DEFAULT_CLASS_TOL):
    """``S^{-1}`` from the Hermitian eigendecomposition of ``S``.

    Raises :class:`NotAFrame` if ``lambda_min <= class_tol * lambda_max``.
    """
    w, u = hermitian_eigh(frame_op)
    bounds = _bounds_from_eigenvalues(w, class_tol)
    if not bounds.is_frame:
        raise NotAFrame(bounds.lower)
    return (u / w) @ u.conj().T


def canonical_dual(system, class_tol=DEFAULT_CLASS_TOL, tol=DEFAULT_TOL):
    """``{(S^{-1} V_i, Lambda_i P_{V_i} S^{-1}, v_i)}`` with dense dual operators."""
    s_inv = inverse_frame_operator(frame_operator(system), class_tol)
    comps = tuple(
        GFusionComponent(image_under(s_inv, c.subspace, tol), c.restricted @ s_inv, c.weight)
        for c in system
    )
    return GFusionSystem(comps)


def reconstruct(system, f, class_tol=DEFAULT_CLASS_TOL):
    """Rebuild ``f`` through the frame and report the worse of two sum orders.

    Returns ``(f_rec, rel_err)`` where ``f_rec = sum_i v_i^2 P Lambda^* Lambda P S^{-1} f``
    and ``rel_err`` is the larger of its error and that of
    ``sum_i v_i^2 S^{-1} P Lambda^* Lambda P f``, each divided by ``max(||f||, 1)``.
    """
    f = _check_vector(system, f)
    s_inv = inverse_frame_operator(frame_operator(system), class_tol)
    g = s_inv @ f
    f_rec = np.zeros_like(f)
    f_alt = np.zeros_like(f)
    for c in system:
        m = c.restricted
        f_rec += c.weight**2 * (m.conj().T @ (m @ g))
        f_alt += c.weight**2 * (s_inv @ (m.conj().T @ (m @ f)))
    scale = max(float(np.linalg.norm(f)), 1.0)
    rel_err = max(np.linalg.norm(f_rec - f), np.linalg.norm(f_alt - f)) / scale
    return f_rec, float(rel_err)


def frame_inequality_sum(system, f):
    """``sum_i v_i^2 ||Lambda_i P_{V_i} f||^2``, summed directly."""
    f = _check_vector(system, f)
    return float(sum(c.weight**2 * np.vdot(c.restricted @ f, c.restricted @ f).real for c in system))


def verify_system(system, trials=20, tol=1e-8, seed=0, class_tol=DEFAULT_CLASS_TOL):
    """Check the single-system identities on random vectors.

    Residuals (each compared against its threshold in the returned report):

    ``frame_lower_bound_deficit``
        ``max(0, class_tol * B - A)``; positive exactly when the system is
        only Bessel. Threshold 0.
    ``energy_identity``
        ``max |<S f, f> - ||T* f||^2| / (1 + ||f||^2)``.
    ``synthesis_analysis_factorization``
        ``max ||T T* f - S f|| / max(1, ||S|| ||f||)``.
    ``adjoint_identity``
        ``max |<T c, f> - <c, T* f>| / max(1, ||T c|| ||f|| + ||c|| ||T* f||)``.
    ``loewner_lower_violation`` / ``loewner_upper_violation``
        ``max(0, A - <S u, u>)`` and ``max(0, <S u, u> - B)`` over unit ``u``.
    ``bound_attainment``
        Distance of ``<S u, u>`` from ``A`` (resp. ``B``) at the extreme eigenvectors.
    ``reconstruction``, ``dual_frame_op_is_inverse``, ``dual_pair_identity``
        Frames only; ``None`` for Bessel-only systems.
    """
    from gff.report import VerificationReport

    rng = np.random.default_rng(seed)
    n = system.ambient_dim
    s = frame_operator(system)
    w, u = hermitian_eigh(s)
    bounds = _bounds_from_eigenvalues(w, class_tol)
    scale = max(1.0, bounds.upper)
    s_norm = operator_norm_2(s)

    energy = fact = adj = low = up = 0.0
    for _ in range(trials):
        f = _complex_normal(rng, n)
        c = CoefficientFamily(tuple(_complex_normal(rng, d) for d in system.local_dims))
        coeffs = analysis(system, f)
        sf = s @ f
        energy = max(energy, abs(np.vdot(f, sf).real - coeffs.norm() ** 2) / (1 + np.vdot(f, f).real))
        fact = max(
            fact,
            np.linalg.norm(synthesis(system, coeffs) - sf) / max(1.0, s_norm * np.linalg.norm(f)),
        )
        tc = synthesis(system, c)
        adj_scale = np.linalg.norm(tc) * np.linalg.norm(f) + c.norm() * coeffs.norm()
        adj = max(adj, abs(np.vdot(f, tc) - c.inner(coeffs)) / max(1.0, adj_scale))
        unit = f / np.linalg.norm(f)
        q = np.vdot(unit, s @ unit).real
        low = max(low, bounds.lower - q)
        up = max(up, q - bounds.upper)
    attain = max(
        abs(np.vdot(u[:, 0], s @ u[:, 0]).real - bounds.lower),
        abs(np.vdot(u[:, -1], s @ u[:, -1]).real - bounds.upper),
    )

    residuals = {
        "frame_lower_bound_deficit": max(0.0, class_tol * bounds.upper - bounds.lower),
        "energy_identity": float(energy),
        "synthesis_analysis_factorization": float(fact),
        "adjoint_identity": float(adj),
        "loewner_lower_violation": float(low),
        "loewner_upper_violation": float(up),
        "bound_attainment": float(attain),
        "reconstruction": None,
        "dual_frame_op_is_inverse": None,
        "dual_pair_identity": None,
    }
    thresholds = {name: tol for name in residuals}
    thresholds["frame_lower_bound_deficit"] = 0.0
    for name in ("loewner_lower_violation", "loewner_upper_violation", "bound_attainment"):
        thresholds[name] = tol * scale

    if bounds.is_frame:
        rec = 0.0
        for _ in range(trials):
            _, err = reconstruct(system, _complex_normal(rng, n), class_tol)
            rec = max(rec, err)
        dual = canonical_dual(system, class_tol)
        eye = np.eye(n)
        residuals["reconstruction"] = float(rec)
        residuals["dual_frame_op_is_inverse"] = operator_norm_2(frame_operator(dual) @ s - eye)
        residuals["dual_pair_identity"] = max(
            operator_norm_2(pair_frame_operator(system, dual) - eye),
            operator_norm_2(pair_frame_operator(dual, system) - eye),
        )
    return VerificationReport(bounds, residuals, thresholds, seed=seed)


def _complex_normal(rng, size):
    return rng.standard_normal(size) + 1j * rng.standard_normal(size)
