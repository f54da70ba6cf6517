"""Spectral operators on tori: intertwiners, R-matrices and identity checks.

The heavy lifting lives in the compiled ``_intertwine`` module. Functions here
wrap its JSON-returning entry points so callers get plain dicts.
"""

import json

from ._intertwine import (
    IntertwineError,
    SpectralField,
    apply_A,
    apply_J,
    apply_T,
    beta_closed_form,
    beta_closed_form_ratio,
    c_factor,
    circle_power_coeff,
    default_test_field,
    gamma,
    inner_product,
    kernel_eigenvalue_quadrature,
    lambda_n,
    lambda_n_alt,
    log_gamma,
    modulated_bump_field,
    parse_complex,
    random_band_limited,
)
from . import _intertwine as _core


def r_matrix_word(sigma, p, q, k=1, l=2):
    return json.loads(_core.r_matrix_word_json(sigma, p, q, k, l))


def yang_baxter_words():
    """Both sides of the Yang-Baxter relation as symbolic word dicts."""
    return json.loads(_core.yang_baxter_lhs_json()), json.loads(_core.yang_baxter_rhs_json())


def apply_word(word, field, symbols=None):
    """Apply a word dict; symbols lists values of (p, q, r, theta, tau)."""
    return _core.apply_word_json(json.dumps(word), field, symbols)


def check_beta(alpha, beta, a, b, c, nodes=480):
    return json.loads(_core.check_beta_json(alpha, beta, a, b, c, nodes))


def check_eigen(n, p):
    return json.loads(_core.check_eigen_json(n, p))


def check_star_triangle(alpha, beta, bands=(16, 32), trials=1, seed=1):
    return json.loads(_core.check_star_triangle_json(alpha, beta, list(bands), trials, seed))


def weak_star_triangle(alpha, beta, band=32, seed=1):
    return json.loads(_core.weak_star_triangle_json(alpha, beta, band, seed))


def check_yang_baxter(p, q, r, theta, tau, bands=(12, 16), trials=1, seed=1):
    return json.loads(_core.check_yang_baxter_json(p, q, r, theta, tau, list(bands), trials, seed))


def yang_baxter_derivation():
    return json.loads(_core.yang_baxter_derivation_json())


def verify_certificate(certificate):
    """Returns (accepted, failed_step, reason)."""
    return _core.verify_certificate(json.dumps(certificate))


def search_derivation(start, end, depth=10):
    found = _core.search_derivation_json(json.dumps(start), json.dumps(end), depth)
    return None if found is None else json.loads(found)


def run_cli(*args):
    """Run the command-line front end in-process; returns (exit_code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
