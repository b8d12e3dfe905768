import math

import pytest

antisym = pytest.importorskip("antisym")

X1 = {"family": "Monomial_x1", "params": {"dim": 1}}


def test_constants_at_half():
    c = antisym.constants(antisym.Params(1, 0.5))
    for key in ("c_ns", "gamma_ns", "tilde_c"):
        assert c[key] == pytest.approx(1 / math.pi, rel=1e-12)
    assert c["halfspace_integral"] == pytest.approx(1.0, rel=1e-12)


def test_x1_is_s_harmonic():
    r = antisym.fraclap(X1, [0.5], antisym.Params(1, 0.5))
    assert r["route"] == "antisymmetric"
    assert abs(r["value"]) < 1e-7


def test_poisson_reproduces_x1():
    assert antisym.poisson_eval(X1, 1.0, [0.3], antisym.Params(1, 0.75)) == pytest.approx(0.3, abs=1e-8)


def test_psi_at_origin():
    assert antisym.psi(0.0, antisym.Params(1, 0.5)) == pytest.approx(2 / math.pi, rel=1e-12)


def test_boundary_profile_of_random_data():
    p = antisym.Params(1, 0.5)
    g = antisym.random_nonneg_antisym(3, 4, p)
    r = antisym.boundary_quotient_profile(g, p, 32)
    assert 0 < r["inf_quotient"] <= r["sup_quotient"]
    assert r["c_lower"] > 0


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        antisym.Params(1, 1.5)
    with pytest.raises(RuntimeError):
        antisym.fraclap(X1, [1e-5], antisym.Params(1, 0.5))


def test_criterion_report():
    r = antisym.run_criterion(1, antisym.Params(1, 0.5))
    assert r["passed"] and r["id"] == 1
