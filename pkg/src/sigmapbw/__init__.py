"""Exact computations over finite rings and their skew PBW extensions.

Modules: ``finring`` (rings as tables), ``endo`` (endomorphisms, derivations,
closures), ``ringprops`` (predicates with witnesses), ``audit`` (implication
checks), ``pbw`` (extension arithmetic, lifts, bounded probes), ``spectop``
(finite spectra and synthetic spaces) and ``cli``.
"""

from .audit import Fixture, audit_theorems
from .endo import MapFamily, RingMap, build_map, builtin, closure
from .finring import FiniteRing, RingError, RingSizeError, build_ring, gf, product, trunc_st, \
    trunc_t2, ut2, ut2_equal_diag, zn
from .pbw import (DegreeOverflow, Extension, ProbeBudget, SkewPBWData, build_extension, lift_maps,
                  monomial_action_oracle, probe, probe_all)
from .ringprops import Verdict, classify, recheck
from .spectop import ring_spectrum_report, space_report, synthetic_space

__version__ = "0.1.0"

__all__ = [
    "FiniteRing", "RingError", "RingSizeError", "build_ring", "gf", "product", "trunc_st",
    "trunc_t2", "ut2", "ut2_equal_diag", "zn",
    "MapFamily", "RingMap", "build_map", "builtin", "closure",
    "Verdict", "classify", "recheck", "Fixture", "audit_theorems",
    "DegreeOverflow", "Extension", "ProbeBudget", "SkewPBWData", "build_extension", "lift_maps",
    "monomial_action_oracle", "probe", "probe_all",
    "ring_spectrum_report", "space_report", "synthetic_space",
]
