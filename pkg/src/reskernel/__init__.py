"""Exact workbench for restriction-kernel computations over odd prime fields.

Everything is exact residue arithmetic mod an odd prime p, truncated at a
configurable internal degree D. The package builds graded-commutative
algebras from presentations, forms their p^2-fold cyclic tensor powers
with Koszul signs, computes invariants/coinvariants under the rotation and
the kernel of the norm (restriction) map on coinvariant classes, profiles
minimal generators of augmentation ideals and of that kernel as a module
over the invariants, and cross-checks every combinatorial shortcut against
brute-force linear algebra.
"""

from .abelian import AbelianExampleConfig, abelian_report
from .cyclic import OrbitClass, TensorPower
from .errors import InternalCheckError
from .gradedalg import (
    AlgebraSpec,
    Element,
    GeneratorProfile,
    GeneratorSpec,
    GradedAlgebra,
    algebra_spec_from_dict,
    build_algebra,
    ideal_minimal_generators,
    preset_spec,
    quotient_algebra,
)
from .linalg import PrimeField, SparseMatrix, Subspace, nullspace, quotient_dim, rref
from .pipelines import (
    RunConfig,
    run_abelian,
    run_fg_profile,
    run_oracle,
    run_tensor_kernel,
)
from .restriction import TwoColumnModel, oracle_kernel_rows, surjectivity_check

__version__ = "0.1.0"

__all__ = [
    "AbelianExampleConfig",
    "AlgebraSpec",
    "Element",
    "GeneratorProfile",
    "GeneratorSpec",
    "GradedAlgebra",
    "InternalCheckError",
    "OrbitClass",
    "PrimeField",
    "RunConfig",
    "SparseMatrix",
    "Subspace",
    "TensorPower",
    "TwoColumnModel",
    "abelian_report",
    "algebra_spec_from_dict",
    "build_algebra",
    "ideal_minimal_generators",
    "nullspace",
    "oracle_kernel_rows",
    "preset_spec",
    "quotient_algebra",
    "quotient_dim",
    "rref",
    "run_abelian",
    "run_fg_profile",
    "run_oracle",
    "run_tensor_kernel",
    "surjectivity_check",
]
