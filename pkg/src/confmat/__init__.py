"""Complex conference matrices, complex Hadamard matrices and equiangular
tight frames, verified exactly over Z[i][a, ..., f] or numerically."""

from .catalog import CatalogEntry, catalog, catalog_json
from .constructions import (
    c6,
    c10,
    c14,
    cab_matrix,
    block_square,
    conference_hadamard,
    fourier,
    hadamard_double,
    paley_blocks,
    paley_matrix,
    quaternary,
)
from .design import DesignMatrix
from .errors import ConfmatError
from .finite_field import FieldSpec, gauss_sum, make_field
from .frames import Frame, frame_from_gram, frame_from_seidel, gram_from_seidel, iterate_block, verify_frame
from .scalars import GaussianInt, SymExpr, format_scalar, parse_scalar
from .verification import (
    Verdict,
    check_paley_blocks,
    is_conference,
    is_hadamard,
    is_hermitian,
    permutation_equivalent,
    seidel_check,
)
from .zauner import zauner_frame, zauner_seidel

__version__ = "0.1.0"
