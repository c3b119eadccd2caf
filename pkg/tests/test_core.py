import numpy as np
import pytest

from smgpareto.core import BoxRegion, as_vector, dominates, project_box, weakly_dominates


def test_project_box_clamps():
    region = BoxRegion.cube(0, 1, 2)
    assert np.allclose(project_box([2, -3], region), [1, 0])
    assert np.allclose(project_box([0.5, 0.5], region), [0.5, 0.5])


def test_project_box_unbounded_is_identity():
    region = BoxRegion.unbounded(1)
    assert np.allclose(project_box([5.0], region), [5.0])


def test_project_box_dimension_mismatch():
    with pytest.raises(ValueError):
        project_box([1.0, 2.0, 3.0], BoxRegion.cube(0, 1, 2))


def test_project_box_idempotent_and_nonexpansive():
    rng = np.random.default_rng(7)
    region = BoxRegion(np.array([-1.0, 0.0, -np.inf]), np.array([1.0, 2.0, np.inf]))
    for _ in range(200):
        x = rng.normal(0, 3, size=3)
        px = project_box(x, region)
        assert np.array_equal(project_box(px, region), px)
        # distance to any feasible point never grows under projection
        y = project_box(rng.normal(0, 3, size=3), region)
        assert np.linalg.norm(px - y) <= np.linalg.norm(x - y) + 1e-12


def test_dominates_examples():
    assert dominates([1, 1], [2, 2])
    assert not dominates([1, 3], [2, 2])
    assert not dominates([1, 1], [1, 1])


def test_weak_dominance_examples():
    assert weakly_dominates([1, 2], [1, 3])
    assert not weakly_dominates([1, 1], [1, 1])
    assert not weakly_dominates([2, 2], [1, 1])


def test_dominance_dimension_mismatch():
    with pytest.raises(ValueError):
        dominates([1, 2], [1, 2, 3])
    with pytest.raises(ValueError):
        weakly_dominates([1], [1, 2])


def test_dominance_partial_order_properties():
    rng = np.random.default_rng(11)
    triples = rng.integers(0, 4, size=(500, 3, 3)).astype(float)
    for a, b, c in triples:
        if dominates(a, b):
            assert weakly_dominates(a, b)
        for rel in (dominates, weakly_dominates):
            assert not rel(a, a)  # irreflexive
            if rel(a, b) and rel(b, c):
                assert rel(a, c)  # transitive


def test_as_vector_rejects_non_finite():
    with pytest.raises(ValueError):
        as_vector([1.0, np.nan])
    with pytest.raises(ValueError):
        as_vector([np.inf, 0.0])


def test_box_region_validation():
    with pytest.raises(ValueError):
        BoxRegion(np.array([1.0]), np.array([0.0]))
    with pytest.raises(ValueError):
        BoxRegion(np.array([0.0, 1.0]), np.array([1.0]))
    with pytest.raises(ValueError):
        BoxRegion.unbounded(2).sample(np.random.default_rng(0), 3)
