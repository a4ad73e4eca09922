"""Exact-arithmetic deformation complexes for differential graded Hopf algebras.

The package builds the Hochschild, Cartier, and Hochschild-Cartier cochain
complexes of a connected d.g. Hopf algebra given by structure constants,
computes their restricted truncated cohomology over the rationals or a prime
field with zero rounding anywhere, and runs the order-by-order deformation,
obstruction, gauge, and rigidity calculus on top of them.
"""

from .fields import GF, QQ, PrimeField, RationalField
from .graded import GradedBasis, GradedMap, permutation_operator, tensor_of_maps
from .structures import (
    Bicomodule,
    Bimodule,
    DGAlgebraPresentation,
    DGCoalgebraPresentation,
    DGHopfPresentation,
    check_an_relations,
    check_cm_relations,
    compute_antipode,
    interior_bicomodule_power,
    interior_bimodule_power,
    validate_dga,
    validate_dgc,
    validate_hopf,
)
from .resolutions import (
    bar_diff,
    check_resolution_identities,
    cobar_diff,
    homotopy_s,
    homotopy_tau,
    internal_diff,
)
from .cochains import CartierComplex, Cochain, HochschildComplex, HopfComplex
from .cohomology import (
    AssembledComplex,
    ComplexWindow,
    TotalCochain,
    assemble,
    cohomology,
    solve_coboundary,
    total_differential,
)
from .harrison import (
    ShuffleOperator,
    ad_differential,
    derivation_space,
    harrison_subspace,
    iso2_check,
    staircase_reduce,
)
from .deformation import (
    DeformationEngine,
    GaugeTransformation,
    ObstructionClass,
    TruncatedDeformation,
    validate_deformation,
)
from .examples import builtin_presentation
from .io import emit_presentation, parse_presentation

__version__ = "0.1.0"
