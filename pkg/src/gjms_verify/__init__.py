"""Exact verification of GJMS operator and Q-curvature identities on model spaces."""

from .compositions import Composition, enumerate_compositions, m_coefficient
from .exact import MultiPoly, TruncSeries
from .mcal import build_M, primary_part
from .qcurv import lambda_defect, q_primary, volume_series
from .report import VerificationReport
from .residue import q_res_sphere, residue_poly
from .spaces import ModelSpace, apply_to_constant, expand_product, gjms, q_value
from .suites import RunConfig, run_verification

__all__ = [
    "Composition", "ModelSpace", "MultiPoly", "RunConfig", "TruncSeries", "VerificationReport",
    "apply_to_constant", "build_M", "enumerate_compositions", "expand_product", "gjms",
    "lambda_defect", "m_coefficient", "primary_part", "q_primary", "q_res_sphere", "q_value",
    "residue_poly", "run_verification", "volume_series",
]
