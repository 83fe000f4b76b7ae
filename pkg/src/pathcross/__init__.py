"""Truncated variation, interval crossings and occupation measures of sampled paths."""

__version__ = "0.1.0"

from .paths import CapacityError, DomainError, Mode, ModeError, SampledPath
from .variation import VariationResult, dtv, normalization_phi, tv, tv_oracle, utv
from .crossings import crossings, indicatrix, indicatrix_integral
from .skorohod import regularize, skorohod_map
from .lebesgue import PsiSpec, build_partition, mean_psi_variation, psi_variation
from .occupation import occupation_density, occupation_integral
from .simulators import ExampleSpec, ProcessSpec, cantor_function, example_path, simulate

__all__ = [
    "CapacityError", "DomainError", "Mode", "ModeError", "SampledPath",
    "VariationResult", "dtv", "normalization_phi", "tv", "tv_oracle", "utv",
    "crossings", "indicatrix", "indicatrix_integral",
    "regularize", "skorohod_map",
    "PsiSpec", "build_partition", "mean_psi_variation", "psi_variation",
    "occupation_density", "occupation_integral",
    "ExampleSpec", "ProcessSpec", "cantor_function", "example_path", "simulate",
]
