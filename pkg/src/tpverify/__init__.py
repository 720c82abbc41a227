"""Exact planar-network and total-positivity verification for type-B Narayana polynomials."""
from .certificate import Certificate, Check
from .constructions import (
    TYPE_B_WEIGHTS,
    LBWeights,
    SegmentedNetwork,
    build_b,
    build_bt,
    build_h,
    build_h_generalized,
    build_lb,
    build_t,
    generalized_weights,
    glue,
    reflect,
    relabel_lb,
    reweight_generalized,
)
from .errors import (
    BudgetExceeded,
    CapExceeded,
    GuardError,
    InvolutionError,
    NetworkError,
    ParameterError,
    ShapeError,
    TPVerifyError,
)
from .immanant import all_immanants, character, immanant, partitions, verify_conjecture
from .involution import classify_h, classify_lb, phi_h, phi_lb
from .netgraph import Arc, Network, Path, PathFamily, VertexId, enumerate_families, enumerate_paths, gf, lgv_check, path_matrix
from .polymat import PolyMatrix, all_minors, det, matmul, submatrix, transpose
from .qpoly import ONE, Q, ZERO, QPoly, geq_q, is_q_nonnegative
from .seqmat import (
    RecurrenceData,
    b_matrix,
    coefficient_matrix,
    cs_matrix,
    generalized_data,
    hankel,
    lb_matrix,
    narayana_b,
    t_matrix,
    type_b_data,
)
from .verifier import verify_lgv, verify_main, verify_thm32, verify_thm43, verify_tp

__version__ = "0.1.0"
