"""Python view of the fedzkp core: xLPN instances, the hash watermark,
sigma protocol sessions, security bounds and cost formulas."""

from fractions import Fraction

from . import _core
from ._core import (
    Credential,
    DimensionError,
    ParameterError,
    ProtocolError,
    PublicInput,
    XlpnInstance,
    XlpnParams,
    canonical_bytes,
    cheating_acceptance,
    convergence_exponent,
    gen_instance,
    hash_watermark,
    run_session,
    security_game_wins,
    validate_instance,
)


def _frac(pair):
    return Fraction(int(pair[0]), int(pair[1]))


def _prob_text(p):
    if isinstance(p, str):
        return p
    p = Fraction(p)
    return f"{p.numerator}/{p.denominator}"


def parse_probability(text):
    return _frac(_core._parse_probability(text))


def near_collision_prob(n, radius):
    return _frac(_core._near_collision_prob(n, radius))


def compute_err_n(n, p_r):
    """p_r may be a Fraction, an int or text such as "2^-128"."""
    return _core._compute_err_n(n, _prob_text(p_r))


def advantage_bound(k, q, n, err_n, d):
    return _frac(_core._advantage_bound(k, q, n, err_n, d))


def hamming_ball_size(n, radius):
    return int(_core.hamming_ball_size(n, radius))


def cost_report(clients, m, l, d, l_com):
    """(memory bits, communication bits) as exact Fractions."""
    mem, comm = _core._cost_report(clients, m, l, d, l_com)
    return _frac(mem), _frac(comm)


__all__ = [
    "Credential",
    "DimensionError",
    "ParameterError",
    "ProtocolError",
    "PublicInput",
    "XlpnInstance",
    "XlpnParams",
    "advantage_bound",
    "canonical_bytes",
    "cheating_acceptance",
    "compute_err_n",
    "convergence_exponent",
    "cost_report",
    "gen_instance",
    "hamming_ball_size",
    "hash_watermark",
    "near_collision_prob",
    "parse_probability",
    "run_session",
    "security_game_wins",
    "validate_instance",
]
