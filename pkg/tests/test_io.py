import json
from pathlib import Path

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings, strategies as st

from conftest import parseval_system, random_frame
from gff import (
    BadParams,
    ClosedSubspace,
    DimensionMismatch,
    GFusionComponent,
    GFusionSystem,
    NonPositiveWeight,
    ParseError,
    canonical_dual,
    load_system,
    optimal_bounds,
    random_system,
    save_system,
    verify_system,
)
from gff.io import dumps, system_from_json, system_to_json
from gff.linalg import max_abs

FIXTURES = Path(__file__).parent / "fixtures"


def assert_same_system(a, b, tol=1e-12):
    assert a.ambient_dim == b.ambient_dim and len(a) == len(b)
    for c, d in zip(a, b):
        assert max_abs(c.subspace.projection - d.subspace.projection) <= tol
        assert max_abs(c.operator - d.operator) <= tol
        assert c.weight == pytest.approx(d.weight, rel=tol)


def test_minimal_scalar_file():
    sys_ = load_system(FIXTURES / "scalar.json")
    assert sys_.ambient_dim == 1 and len(sys_) == 1
    b = optimal_bounds(sys_)
    assert (b.lower, b.upper, b.kind) == (1.0, 1.0, "parseval")


def test_nonorthonormal_basis_is_orthonormalized():
    sys_ = load_system(FIXTURES / "nonorthonormal_basis.json")
    sub = sys_.components[0].subspace
    assert sub.rank == 2
    raw = np.array([[2, 1], [0, 1]], dtype=complex)
    oracle = scipy.linalg.orth(raw)
    assert max_abs(sub.projection - oracle @ oracle.conj().T) <= 1e-12
    assert max_abs(sub.projection - np.eye(2)) <= 1e-12


def test_weight_zero_names_component():
    with pytest.raises(NonPositiveWeight, match=r"components\[1\]"):
        load_system(FIXTURES / "weight_zero.json")


def test_invalid_json():
    with pytest.raises(ParseError, match="invalid JSON"):
        load_system(FIXTURES / "broken.json")


@pytest.mark.parametrize(
    "mutate, path",
    [
        (lambda d: d.pop("ambient_dim"), "ambient_dim"),
        (lambda d: d.__setitem__("components", []), "components"),
        (lambda d: d["components"][0].pop("operator"), "components[0].operator"),
        (lambda d: d["components"][0].__setitem__("weight", "1"), "components[0].weight"),
        (lambda d: d["components"][0]["operator"].__setitem__("rows", 0), "components[0].operator.rows"),
        (lambda d: d["components"][0]["operator"]["entries"].pop(), "components[0].operator.entries"),
        (lambda d: d["components"][0]["subspace_basis"][0].__setitem__(0, "1+0j"),
         "components[0].subspace_basis[0][0]"),
        (lambda d: d["components"][0]["subspace_basis"][0].__setitem__(0, [1, 2, 3]),
         "components[0].subspace_basis[0][0]"),
    ],
)
def test_parse_error_paths(mutate, path):
    doc = system_to_json(parseval_system(2))
    mutate(doc)
    with pytest.raises(ParseError) as info:
        system_from_json(doc)
    assert info.value.path == path


def test_dimension_mismatches():
    doc = system_to_json(parseval_system(2))
    doc["components"][0]["subspace_basis"][0].append([0.0, 0.0])
    with pytest.raises(DimensionMismatch, match="subspace_basis"):
        system_from_json(doc)
    doc = system_to_json(parseval_system(2))
    doc["components"][0]["operator"] = {"rows": 1, "cols": 3, "entries": [[0.0, 0.0]] * 3}
    with pytest.raises(DimensionMismatch, match="operator"):
        system_from_json(doc)


def test_round_trip(tmp_path):
    sys_ = random_system(3, 4, 3, [1, 2, 3])
    save_system(sys_, tmp_path / "s.json")
    back = load_system(tmp_path / "s.json")
    assert_same_system(sys_, back)
    save_system(sys_, tmp_path / "t.json")
    assert (tmp_path / "s.json").read_text() == (tmp_path / "t.json").read_text()


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 5), m=st.integers(1, 4))
def test_round_trip_property(seed, n, m):
    sys_ = random_system(seed, n, m, 2)
    assert_same_system(sys_, system_from_json(json.loads(dumps(system_to_json(sys_)))))


def test_saved_dual_reverifies(tmp_path):
    sys_ = random_frame(8, 3, 4)
    save_system(canonical_dual(sys_), tmp_path / "dual.json")
    dual = load_system(tmp_path / "dual.json")
    assert_same_system(canonical_dual(sys_), dual, tol=1e-10)
    report = verify_system(dual, trials=5)
    assert report.passed, report.failures()


def test_zero_rank_component_round_trip(tmp_path):
    comps = (
        GFusionComponent(ClosedSubspace.full(2), np.eye(2), 1.0),
        GFusionComponent(ClosedSubspace.zero(2), np.ones((1, 2)), 1.0),
    )
    save_system(GFusionSystem(comps), tmp_path / "z.json")
    assert json.loads((tmp_path / "z.json").read_text())["components"][1]["subspace_basis"] == []
    back = load_system(tmp_path / "z.json")
    assert back.components[1].subspace.rank == 0
    assert max_abs(back.components[1].subspace.projection) == 0


def test_output_is_strict_json(tmp_path):
    text = dumps({"x": 0.1, "y": [1e-300, -2.5]})
    assert json.loads(text) == {"x": 0.1, "y": [1e-300, -2.5]}
    with pytest.raises(ValueError):
        dumps({"x": float("nan")})


class TestRandomSystem:
    def test_deterministic(self):
        a, b = random_system(42, 4, 3, [1, 2, 3]), random_system(42, 4, 3, [1, 2, 3])
        for c, d in zip(a, b):
            np.testing.assert_array_equal(c.subspace.basis, d.subspace.basis)
            np.testing.assert_array_equal(c.operator, d.operator)
            assert c.weight == d.weight

    def test_seeds_differ(self):
        a, b = random_system(1, 3, 2, 2), random_system(2, 3, 2, 2)
        assert not np.array_equal(a.components[0].operator, b.components[0].operator)

    def test_shapes_and_ranges(self):
        sys_ = random_system(5, 4, 6, [1, 2, 3, 1, 2, 3], weight_range=(0.25, 0.75))
        assert sys_.local_dims == (1, 2, 3, 1, 2, 3)
        assert all(0.25 <= w <= 0.75 for w in sys_.weights)
        assert all(1 <= c.subspace.rank <= 4 for c in sys_)

    def test_mostly_frames(self):
        seeds = range(1000, 1100)
        frames = sum(optimal_bounds(random_system(s, 4, 3, 2)).is_frame for s in seeds)
        assert frames >= 95

    def test_single_rank_one_component_is_bessel(self):
        sys_ = random_system(0, 3, 1, 1, ranks=[1])
        assert optimal_bounds(sys_).kind == "bessel_only"

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(ambient_dim=0, n_components=1, local_dims=1),
            dict(ambient_dim=2, n_components=0, local_dims=1),
            dict(ambient_dim=2, n_components=2, local_dims=[1, 2, 3]),
            dict(ambient_dim=2, n_components=1, local_dims=[0]),
            dict(ambient_dim=2, n_components=1, local_dims=1, weight_range=(0, 1)),
            dict(ambient_dim=2, n_components=1, local_dims=1, weight_range=(2, 1)),
            dict(ambient_dim=2, n_components=1, local_dims=1, ranks=[3]),
        ],
    )
    def test_bad_params(self, kwargs):
        with pytest.raises(BadParams):
            random_system(0, **kwargs)
