"""Controlled Loewner-Kufarev numerics (Python bindings)."""

from ._core import (
    grunsky_coefficients,
    grunsky_operator,
    gue_cov,
    harmonic_moments,
    projection,
    run_campaign,
    solve_coefficients,
    spectral_norm,
    ward_alpha,
)

__all__ = [
    "grunsky_coefficients",
    "grunsky_operator",
    "gue_cov",
    "harmonic_moments",
    "projection",
    "run_campaign",
    "solve_coefficients",
    "spectral_norm",
    "ward_alpha",
]
