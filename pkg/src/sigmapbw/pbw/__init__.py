from .extension import (AssociativityError, DegreeOverflow, Extension, ExtensionError,
                        Polynomial, SkewPBWData, build_extension, monomial_key)
from .lift import LiftError, LiftValidationError, LiftedMaps, lift_maps
from .oracle import monomial_action_oracle

__all__ = [
    "AssociativityError", "DegreeOverflow", "Extension", "ExtensionError", "Polynomial",
    "SkewPBWData", "build_extension", "monomial_key", "LiftError", "LiftValidationError",
    "LiftedMaps", "lift_maps", "monomial_action_oracle",
]

from .probe import PROPERTIES, ProbeBudget, ProbeVerdict, idempotent_transparency, probe, probe_all

__all__ += ["PROPERTIES", "ProbeBudget", "ProbeVerdict", "idempotent_transparency", "probe",
            "probe_all"]
