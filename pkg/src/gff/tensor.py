"""Tensor products of vectors, operators and g-fusion systems.

Pairs ``(i, j)`` are always enumerated row-major (``i`` outer, ``j`` inner),
matching the block layout of :func:`gff.linalg.kron`, so every factorization
below is an entrywise Kronecker identity.
"""
import os
from dataclasses import dataclass

import numpy as np

from gff.errors import NotAFrame, SizeLimit
from gff.gfusion import (
    DEFAULT_CLASS_TOL,
    CoefficientFamily,
    GFusionComponent,
    GFusionSystem,
    _bounds_from_eigenvalues,
    _complex_normal,
    analysis,
    canonical_dual,
    frame_inequality_sum,
    frame_operator,
    inverse_frame_operator,
    pair_frame_operator,
    synthesis,
)
from gff.linalg import as_vector, hermitian_eigh, kron, operator_norm_2
from gff.report import VerificationReport
from gff.subspace import ClosedSubspace

DEFAULT_MAX_ELEMENTS = 1 << 20

TensorVerificationReport = VerificationReport


def element_budget():
    """Largest number of entries any assembled product matrix may have.

    Read from ``GFF_MAX_ELEMENTS`` when set.
    """
    raw = os.environ.get("GFF_MAX_ELEMENTS")
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_ELEMENTS
    try:
        value = int(raw)
    except ValueError:
        raise SizeLimit(f"GFF_MAX_ELEMENTS must be an integer, got {raw!r}") from None
    if value <= 0:
        raise SizeLimit(f"GFF_MAX_ELEMENTS must be positive, got {value}")
    return value


def tensor_vector(f, g):
    f = as_vector(f, "f")
    g = as_vector(g, "g")
    return kron(f[:, None], g[:, None])[:, 0]


def tensor_operator(q, t):
    return kron(q, t)


@dataclass(frozen=True, eq=False)
class TensorSystem:
    left: GFusionSystem
    right: GFusionSystem
    product: GFusionSystem

    def component(self, i, j):
        return self.product.components[i * len(self.right) + j]


def tensor_system(left, right, max_elements=None):
    """Product system ``{(V_i (x) W_j, Lambda_i (x) Gamma_j, v_i w_j)}``.

    Raises :class:`SizeLimit` if the product frame operator or the stacked
    product operators would exceed the element budget.
    """
    budget = element_budget() if max_elements is None else max_elements
    dim = left.ambient_dim * right.ambient_dim
    stacked = dim * sum(left.local_dims) * sum(right.local_dims)
    if max(dim * dim, stacked) > budget:
        raise SizeLimit(
            f"product needs {max(dim * dim, stacked)} matrix entries, budget is {budget}"
        )
    comps = []
    for a in left:
        for b in right:
            comps.append(
                GFusionComponent(
                    ClosedSubspace(kron(a.subspace.basis, b.subspace.basis)),
                    kron(a.operator, b.operator),
                    a.weight * b.weight,
                )
            )
    return TensorSystem(left, right, GFusionSystem(tuple(comps)))


def simple_family(fs, gs):
    """The product coefficient family ``{f_i (x) g_j}`` in row-major order."""
    return CoefficientFamily(tuple(tensor_vector(f, g) for f in fs.blocks for g in gs.blocks))


def _bounds(s, class_tol):
    w, _ = hermitian_eigh(s)
    return _bounds_from_eigenvalues(w, class_tol)


def _rel(x, scale):
    return x / max(1.0, scale)


def verify_tensor_identities(
    ts, trials=20, tol=1e-8, seed=0, primed=None, check_dual=True, class_tol=DEFAULT_CLASS_TOL
):
    """Numerically certify the tensor-product identities for ``ts``.

    Parameters
    ----------
    ts : TensorSystem
    trials : int
        Number of random simple tensors / coefficient families per check.
    tol : float
        Base threshold; several thresholds are scaled by the magnitude of the
        quantities compared (see the ``thresholds`` of the returned report).
    seed : int
        Seed of the ``numpy`` PCG64 generator driving the random trials.
    primed : TensorSystem, optional
        Product of a second pair of Bessel systems, conformable with ``ts``.
        Enables the pair operator checks and the dual-pairing premise checks.
    check_dual : bool
        Run the canonical dual checks; requires the product to be a frame.

    Raises
    ------
    NotAFrame
        If ``check_dual`` and the product frame operator is not invertible.
    LocalSpaceMismatch
        If ``primed`` is not conformable with ``ts``.
    """
    rng = np.random.default_rng(seed)
    left, right, prod = ts.left, ts.right, ts.product
    s_l, s_r, s_p = frame_operator(left), frame_operator(right), frame_operator(prod)
    b_l, b_r, b_p = _bounds(s_l, class_tol), _bounds(s_r, class_tol), _bounds(s_p, class_tol)
    if check_dual and not b_p.is_frame:
        raise NotAFrame(b_p.lower)

    res, thr = {}, {}

    def put(name, value, threshold):
        res[name] = None if value is None else float(value)
        thr[name] = float(threshold)

    put("frame_lower_bound_deficit", max(0.0, class_tol * b_p.upper - b_p.lower), 0.0)

    lower_expected = b_l.lower * b_r.lower
    upper_expected = b_l.upper * b_r.upper
    put("bound_factorization_lower", abs(b_p.lower - lower_expected), tol * max(1.0, lower_expected))
    put("bound_factorization_upper", abs(b_p.upper - upper_expected), tol * max(1.0, upper_expected))

    put(
        "frame_op_factorization",
        operator_norm_2(s_p - kron(s_l, s_r)),
        tol * max(1.0, operator_norm_2(s_l) * operator_norm_2(s_r)),
    )

    simple_ineq = synth = anal = 0.0
    for _ in range(trials):
        f = _complex_normal(rng, left.ambient_dim)
        g = _complex_normal(rng, right.ambient_dim)
        f /= np.linalg.norm(f)
        g /= np.linalg.norm(g)
        val = frame_inequality_sum(prod, tensor_vector(f, g))
        simple_ineq = max(simple_ineq, b_p.lower - val, val - b_p.upper)

        fs = CoefficientFamily(tuple(_complex_normal(rng, d) for d in left.local_dims))
        gs = CoefficientFamily(tuple(_complex_normal(rng, d) for d in right.local_dims))
        tf, tg = synthesis(left, fs), synthesis(right, gs)
        err = np.linalg.norm(synthesis(prod, simple_family(fs, gs)) - tensor_vector(tf, tg))
        synth = max(synth, _rel(err, np.linalg.norm(tf) * np.linalg.norm(tg)))

        af, ag = analysis(left, f), analysis(right, g)
        ap = analysis(prod, tensor_vector(f, g))
        err = np.sqrt(sum(
            np.linalg.norm(block - ref) ** 2
            for block, ref in zip(ap.blocks, simple_family(af, ag).blocks)
        ))
        anal = max(anal, _rel(err, af.norm() * ag.norm()))
    put("simple_tensor_inequality", max(0.0, simple_ineq), tol * max(1.0, b_p.upper))
    put("synthesis_factorization", synth, tol)
    put("analysis_factorization", anal, tol)

    dual_names = (
        "inverse_factorization",
        "dual_frame_op_is_inverse",
        "dual_factorization",
        "dual_bounds_lower_margin",
        "dual_bounds_upper_margin",
    )
    if check_dual:
        inv_l = inverse_frame_operator(s_l, class_tol)
        inv_r = inverse_frame_operator(s_r, class_tol)
        inv_p = inverse_frame_operator(s_p, class_tol)
        put(
            "inverse_factorization",
            operator_norm_2(inv_p - kron(inv_l, inv_r)),
            tol * max(1.0, operator_norm_2(inv_l) * operator_norm_2(inv_r)),
        )
        theta = canonical_dual(prod, class_tol)
        put(
            "dual_frame_op_is_inverse",
            operator_norm_2(frame_operator(theta) - inv_p),
            tol * max(1.0, operator_norm_2(inv_p)),
        )
        factored = tensor_system(
            canonical_dual(left, class_tol), canonical_dual(right, class_tol), max_elements=np.inf
        ).product
        worst = 0.0
        for c, d in zip(theta, factored):
            worst = max(
                worst,
                operator_norm_2(c.subspace.projection - d.subspace.projection),
                _rel(operator_norm_2(c.operator - d.operator), operator_norm_2(d.operator)),
            )
        put("dual_factorization", worst, tol)
        b_t = _bounds(frame_operator(theta), class_tol)
        a_opt, b_opt, c_opt, d_opt = b_l.lower, b_l.upper, b_r.lower, b_r.upper
        put("dual_bounds_lower_margin", max(0.0, 1.0 / (b_opt * d_opt) - b_t.lower), tol)
        put(
            "dual_bounds_upper_margin",
            max(0.0, b_t.upper - b_opt * d_opt / (a_opt**2 * c_opt**2)),
            tol,
        )
    else:
        for name in dual_names:
            put(name, None, tol)

    premises = {}
    if primed is not None:
        s_pair = pair_frame_operator(prod, primed.product)
        s_ll = pair_frame_operator(left, primed.left)
        s_rr = pair_frame_operator(right, primed.right)
        pair_norm = operator_norm_2(s_pair)
        put(
            "pair_op_factorization",
            operator_norm_2(s_pair - kron(s_ll, s_rr)),
            tol * max(1.0, pair_norm),
        )
        b1 = b_p.upper
        b2 = _bounds(frame_operator(primed.product), class_tol).upper
        put("pair_norm_bound_margin", max(0.0, pair_norm - np.sqrt(b1 * b2)), tol)

        eye_l, eye_r = np.eye(left.ambient_dim), np.eye(right.ambient_dim)
        premises["left_dual_pairing"] = (
            operator_norm_2(pair_frame_operator(primed.left, left) - eye_l), tol)
        premises["right_dual_pairing"] = (
            operator_norm_2(pair_frame_operator(primed.right, right) - eye_r), tol)
        if all(r <= t for r, t in premises.values()):
            d_opt = _bounds(frame_operator(primed.left), class_tol).upper
            f_opt = _bounds(frame_operator(primed.right), class_tol).upper
            put("pairing_lower_bound_margin", max(0.0, 1.0 / (d_opt * f_opt) - b_p.lower), tol)
        else:
            put("pairing_lower_bound_margin", None, tol)

    return VerificationReport(b_p, res, thr, seed=seed, premises=premises)
