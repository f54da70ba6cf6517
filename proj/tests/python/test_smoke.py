import json
import math

import pytest

import intertwine as it


def test_lambda_is_unimodular_on_imaginary_axis():
    for n in (0, 1, -3, 20):
        assert abs(abs(it.lambda_n(n, 0.4j)) - 1.0) < 1e-13


def test_lambda_matches_kernel_quadrature():
    for n in (0, 2, -5):
        assert abs(it.lambda_n(n, 0.3j) - it.kernel_eigenvalue_quadrature(n, 0.3j)) < 1e-10


def test_gamma_pole_raises():
    with pytest.raises(it.IntertwineError, match="PoleError"):
        it.gamma(-2.0)


def test_field_roundtrip_and_unitary_J():
    f = it.random_band_limited(2, 6, 0.5, 7)
    assert f.dim == 2 and f.band == 6
    assert abs(f.norm() - 1.0) < 1e-12
    g = it.SpectralField.from_json(f.to_json())
    assert (g - f).norm() == 0.0
    h = it.apply_J(1, 0.7j, f)
    assert abs(h.norm() - f.norm()) < 1e-12


def test_beta_check_passes():
    a, b, c = (complex(math.cos(t), math.sin(t)) for t in (0.3, 2.2, 4.4))
    rep = it.check_beta(0.3 + 0.1j, 0.4 - 0.2j, a, b, c)
    assert rep["passed"], rep


def test_star_triangle_small_band():
    rep = it.check_star_triangle(0.7j, -0.2j, bands=(16, 32), trials=1)
    assert rep["passed"], rep


def test_weak_star_triangle():
    rep = it.weak_star_triangle(0.2 + 0.3j, -0.3 - 0.1j, band=32)
    assert rep["passed"], rep


def test_derivation_certificate_roundtrip():
    cert = it.yang_baxter_derivation()
    assert cert["star_triangle_moves"] == 8
    assert it.verify_certificate(cert)[0]
    lhs, rhs = it.yang_baxter_words()
    assert cert["end"] == rhs
    cert["steps"][3]["position"] += 1
    assert not it.verify_certificate(cert)[0]


def test_search_trivial():
    lhs, _ = it.yang_baxter_words()
    found = it.search_derivation(lhs, lhs, depth=2)
    assert found is not None and found["steps"] == []


def test_cli_exit_codes():
    code, out, _ = it.run_cli("verify-beta", "--json")
    assert code == 0
    assert json.loads(out)["passed"]
    code, _, err = it.run_cli("verify-beta", "--no-such-flag")
    assert code == 2
    assert json.loads(err)["error"] == "ConfigError"
