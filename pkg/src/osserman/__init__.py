"""Verification library for Clifford-structure curvature tensors in R^8.

Exact octonion/bioctonion algebra, Clifford representation families,
algebraic curvature tensors with Jacobi spectra and the Osserman test,
the covariant-derivative model with its second-Bianchi residuals, and a
CLI that runs the whole battery deterministically.
"""

__version__ = "0.1.0"

from .cliffrep import (
    NOT_SCALAR,
    OperatorFamily,
    block_three_family,
    intertwining_residual,
    product_sign,
    psi_reconstruct,
    rho7,
    validate_family,
)
from .cliffstruct import (
    CliffordStructure,
    build_cliff,
    case_b_structure,
    cliff_term,
    jacobi_closed,
    peel_simple,
    predict_eigenspaces,
    seven_expand_residual,
    shift_constant,
)
from .curvature import (
    AlgebraicCurvatureTensor,
    OssermanVerdict,
    block_tensor,
    const_curv,
    einstein_check,
    jacobi,
    jacobi_spectrum,
    osserman_test,
    ricci,
    tensor_from_components,
)
from .errors import (
    ConvergenceError,
    DegeneracyError,
    OssermanError,
    ReconstructionError,
    ValidationError,
)
from .numkit import (
    ClusteredSpectrum,
    Xoshiro256,
    cluster_spectrum,
    sample_unit_vectors,
    stream_seed,
    sym_eigen,
)
from .octonion import (
    DEFAULT_TABLE,
    Bioctonion,
    MultiplicationTable,
    Octonion,
    bioct_mul,
    conj,
    identity_suite,
    j_op,
    jspace,
    lspace,
    oct_mul,
    validate_table,
)
from .polyjacobi import (
    HomPolyVec,
    Poly,
    PolyGramSystem,
    divisible_by_norm,
    eigenprojection_W,
    gram_residuals,
    parse_poly,
    reduce_mod_norm,
)
from .symcheck import (
    ConnectionModel,
    DerivativeField,
    a_map,
    b_form,
    bianchi_residual,
    case_b_residual,
    lemma_oct_F,
    lemma_oct_residual,
    nabla_j,
    nabla_r,
    nabla_r_full,
    symmetric_residual,
)
