"""Python surface of the quantum-spacetime field toolkit.

Thin re-exports of the compiled core plus a couple of convenience helpers;
heavy lifting stays in C++.
"""

import json as _json

from ._core import (
    beta_pair,
    check_stur,
    classify_direction,
    commutative_limit_table,
    effective_integrand,
    expand_summary,
    feynman_terms_json,
    gamma_slice,
    lambda_closed,
    lambda_quadrature,
    lambda_split,
    optimal_state_eval,
    r_product_json,
    ray_decay,
    state_moments,
    twist_phase,
    weyl_product,
    wf_candidate,
)

__all__ = [
    "beta_pair",
    "check_stur",
    "classify_direction",
    "commutative_limit_table",
    "effective_integrand",
    "expand",
    "expand_summary",
    "feynman_terms_json",
    "gamma_slice",
    "lambda_closed",
    "lambda_quadrature",
    "lambda_split",
    "optimal_state_eval",
    "r_product",
    "r_product_json",
    "ray_decay",
    "state_moments",
    "twist_phase",
    "weyl_product",
    "wf_candidate",
]


def expand(k, n=4):
    """Diagram-rule expansion at order k as a parsed dict."""
    return _json.loads(feynman_terms_json(k, n))


def r_product(k, n=4, route="closed"):
    """Retarded-product expansion as (parsed dict, checked flag)."""
    text, checked = r_product_json(k, n, route)
    return _json.loads(text), checked
