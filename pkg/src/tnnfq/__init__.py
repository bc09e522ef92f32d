"""Total nonnegativity for Grassmannians over finite fields."""
from ._kernels import BACKEND
from .finite_field import (FieldElement, FieldSpec, Sign, embed_subfield, make_field,
                           primitive_root, sign_class)
from .grassmannian import (CountTable, Filter, Subspace, WorkCapExceeded, canonicalize,
                           count, count_table, dual, enumerate_subspaces, gaussian_binomial,
                           is_tnn, is_tp, lift)
from .matrix import MatrixFq, alt_rows, minor, null_space_basis, plucker_vector, rref

__version__ = "0.1.0"
