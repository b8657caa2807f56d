"""epskk: spatially nonlocal response functions and their dispersion relations.

Evaluates the longitudinal/transverse permittivities of pristine graphene
and reference metal/insulator models on the real axis, in the upper
half-plane and on the imaginary frequency axis, and verifies the
pole-class-aware Kramers-Kronig relations and the underlying contour
integration numerically.
"""

from ._core import backend_name
from .models import (
    ALPHA_DEFAULT,
    ComplexPermittivity,
    Drude,
    DrudeParams,
    GeneralizedPlasma,
    GrapheneLongitudinal,
    GrapheneParams,
    GrapheneTransverse,
    Oscillator,
    OscillatorParams,
    Plasma,
    PoleClass,
    eval_complex,
    eval_real,
    parity_defect,
    polarization_00,
    polarization_combo,
    pole_class,
)

__version__ = "0.1.0"

__all__ = [
    "ALPHA_DEFAULT",
    "ComplexPermittivity",
    "Drude",
    "DrudeParams",
    "GeneralizedPlasma",
    "GrapheneLongitudinal",
    "GrapheneParams",
    "GrapheneTransverse",
    "Oscillator",
    "OscillatorParams",
    "Plasma",
    "PoleClass",
    "backend_name",
    "eval_complex",
    "eval_real",
    "parity_defect",
    "polarization_00",
    "polarization_combo",
    "pole_class",
]
