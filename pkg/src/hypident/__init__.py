"""Exact and numeric verification of hypergeometric and basic hypergeometric identities."""

from hypident.errors import HypIdentError, PoleError
from hypident.exact import gen_binomial, pochhammer, q_pochhammer
from hypident.hyper import HypSeriesSpec, VwpSpec, basic_hyp_phi, bilateral_1psi1, hyp_f, vwp_8phi7
from hypident.registry import build_side, catalogue, get_identity
from hypident.replay import replay_proof
from hypident.series import TruncatedSeries, q_product, series_invert, series_pow
from hypident.verify import (
    VerificationReport,
    falsify_analytic_ggrq2,
    q_limit_check,
    sample_parameters,
    verify_formal,
    verify_numeric,
)

__all__ = [
    "HypIdentError",
    "PoleError",
    "pochhammer",
    "q_pochhammer",
    "gen_binomial",
    "TruncatedSeries",
    "q_product",
    "series_invert",
    "series_pow",
    "HypSeriesSpec",
    "VwpSpec",
    "hyp_f",
    "basic_hyp_phi",
    "vwp_8phi7",
    "bilateral_1psi1",
    "build_side",
    "catalogue",
    "get_identity",
    "replay_proof",
    "VerificationReport",
    "sample_parameters",
    "verify_formal",
    "verify_numeric",
    "falsify_analytic_ggrq2",
    "q_limit_check",
]
