import math

import pytest

from kkw.coeffs import GaussianRational
from kkw.oracle import (
    PoleOnContour,
    build_rep,
    matrix_trace_word,
    mc_sphere,
    numeric_contour,
    omega_value,
)


@pytest.mark.parametrize("dim,size", [(3, 2), (4, 4), (6, 8)])
def test_rep_shapes(dim, size):
    rep = build_rep(dim)
    assert rep.size == size
    assert len(rep.generators) == dim
    entries = {x for g in rep.generators for row in g for x in row}
    assert entries <= {GaussianRational(v, w) for v, w in [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)]}


def test_rep_rejects_other_dimensions():
    with pytest.raises(ValueError):
        build_rep(5)


@pytest.mark.parametrize("dim", [3, 4, 6])
def test_word_traces(dim):
    rep = build_rep(dim)
    e0 = [1] + [0] * (dim - 1)
    assert matrix_trace_word(rep, [e0]) == GaussianRational(0)
    assert matrix_trace_word(rep, [e0, e0]) == GaussianRational(-rep.size)


def test_contour_examples():
    assert numeric_contour(lambda z: 1 / ((z - 1j) * (z + 1j))) == pytest.approx(math.pi, abs=1e-9)
    assert abs(numeric_contour(lambda z: 1 / (z + 1j) ** 3)) < 1e-9
    v = numeric_contour(lambda z: 1 / ((z - 1j) ** 5 * (z + 1j) ** 2))
    assert abs(v - (-5j * math.pi / 32)) < 1e-9


def test_pole_on_contour():
    with pytest.raises(PoleOnContour):
        numeric_contour(lambda z: 1 / (z - 2j), poles=(2j,))


def test_monte_carlo_examples():
    est, err = mc_sphere((1, 0, 0), 2, samples=10**5, seed=3, with_error=True)
    assert abs(est) < 3 * err
    assert mc_sphere((2, 0, 0), 2, seed=4) == pytest.approx(4 * math.pi / 3, rel=1e-2)
    assert mc_sphere((2, 2, 0, 0, 0), 4, seed=5) == pytest.approx(omega_value(4) / 35, rel=1e-2)


def test_monte_carlo_seeded():
    assert mc_sphere((2, 0), 1, samples=10**5, seed=9) == mc_sphere((2, 0), 1, samples=10**5, seed=9)


def test_monte_carlo_sample_floor():
    with pytest.raises(ValueError):
        mc_sphere((2, 0), 1, samples=1000)


def test_omega_values():
    assert omega_value(1) == pytest.approx(2 * math.pi)
    assert omega_value(2) == pytest.approx(4 * math.pi)
    assert omega_value(3) == pytest.approx(2 * math.pi ** 2)
