"""Exact computations for cyclotomic double affine Lie algebras."""

__version__ = "0.1.0"

from .errors import CdalaError
from .scalars import CycScalar, zeta_power
from .rings import SmashElem, CommElem, KahlerClass, idempotent
from .cherednik import CherParams, CherElem, TrigElem
from .matlie import MatElem, ExtElem, mat_bracket, uce_bracket, triangular_project
from .structure import (loop_iso, toroidal_iso, c_embedding, ad_eigen_table,
                        simple_root_matrix, check_presentation)
from .glinf import iota, phi_am, check_hom_windowed, monodromy_check
from .highestweight import (WeightData, TensorLabels, quasipoly_detect, qfin_check,
                            weight_from_tensor, integrability_check)
from .weyl import schur_weyl_dim, coinvariant_dim, reduced_ring, weyl_lower_bound
from .parser import ParseContext, parse, parse_scalar
from .report import Report
