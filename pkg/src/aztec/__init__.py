"""Exact and asymptotic theory of uniformly random domino tilings of the
Aztec diamond and the half Aztec diamond, through their interlaced particle
systems."""

from .distributions import count_tilings, joint_pdf, one_line_pdf, tail_marginal_pdf, y_joint_pdf
from .half import HalfParticleSystem, count_half
from .model import BudgetError, DominoTiling, ParticleSystem, TilingError
from .sampler import RngStream, sample_half, sample_system, sample_tiling

__all__ = [
    "BudgetError", "DominoTiling", "HalfParticleSystem", "ParticleSystem", "RngStream", "TilingError",
    "count_half", "count_tilings", "joint_pdf", "one_line_pdf", "sample_half", "sample_system",
    "sample_tiling", "tail_marginal_pdf", "y_joint_pdf",
]
