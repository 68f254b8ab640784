import math

import numpy as np
import pytest

from kssearch.embedding import min10A_chain_residual, min10A_identity_residual
from kssearch.embedding.algebra import identity_grid


def unit(t):
    return (math.cos(t), math.sin(t), 0.0)


def test_basis_value():
    assert min10A_identity_residual((1, 0, 0), (0, 1, 0)) == -1.0


@pytest.mark.parametrize("v,w", [((1, 0, 0), (1, 0, 0)), ((1, 0, 0), (-1, 0, 0)), ((0, 0, 1), (1, 0, 0)), ((2, 0, 0), (0, 1, 0))])
def test_rejects(v, w):
    with pytest.raises(ValueError):
        min10A_identity_residual(v, w)


def test_monte_carlo_bound():
    rng = np.random.default_rng(0)
    th = rng.uniform(0, 2 * math.pi, size=(100_000, 2))
    v1, v2, w1, w2 = np.cos(th[:, 0]), np.sin(th[:, 0]), np.cos(th[:, 1]), np.sin(th[:, 1])
    keep = np.abs(v1 * w2 - v2 * w1) > 1e-12
    val = v1 * w2 * (v1 * w1 + v2 * w2) - 1
    assert np.all(np.abs(val[keep]) > 1e-6)
    # spot-check the scalar function against the vectorised formula
    for i in range(20):
        assert math.isclose(min10A_identity_residual(unit(th[i, 0]), unit(th[i, 1])), val[i], abs_tol=1e-12)


def test_grid_bound():
    best, count = identity_grid(step=1e-2)
    assert best > 1e-4 and count > 0


def test_chain_residual_matches_cross_products():
    # x × (x × (w × (w × (v × (v × a))))) against a, for a = (0, a2, a3)
    rng = np.random.default_rng(1)
    x = np.array([1.0, 0, 0])
    for _ in range(200):
        tv, tw = rng.uniform(0, 2 * math.pi, 2)
        v, w = np.array(unit(tv)), np.array(unit(tw))
        if abs(np.cross(v, w)[2]) < 1e-6:
            continue
        a = np.array([0.0, *rng.standard_normal(2)])
        chain = np.cross(x, np.cross(x, np.cross(w, np.cross(w, np.cross(v, np.cross(v, a))))))
        # a collinear with chain iff a2*c3 - a3*c2 = 0
        det = a[1] * chain[2] - a[2] * chain[1]
        assert math.isclose(det, a[1] * a[2] * min10A_chain_residual(v, w), abs_tol=1e-9)


def test_chain_residual_never_vanishes_off_collinear():
    rng = np.random.default_rng(2)
    for _ in range(2000):
        tv, tw = rng.uniform(0, 2 * math.pi, 2)
        if abs(math.sin(tv - tw)) < 1e-3:
            continue
        assert min10A_chain_residual(unit(tv), unit(tw)) < 0
