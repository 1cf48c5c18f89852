"""Weight distributions of trace codes over F_p built from quadratic trace conditions."""

from .codes import WeightDistribution, defining_set, weight_distribution
from .cyclotomic import CycInt, gauss_sum
from .gf import FFElem, FieldCtx, field_new
from .theory import VerifyReport, classify, predicted_table, verify

__version__ = "0.1.0"

__all__ = [
    "CycInt",
    "FFElem",
    "FieldCtx",
    "VerifyReport",
    "WeightDistribution",
    "classify",
    "defining_set",
    "field_new",
    "gauss_sum",
    "predicted_table",
    "verify",
    "weight_distribution",
]
