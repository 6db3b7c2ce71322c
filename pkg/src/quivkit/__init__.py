"""quivkit: exact arrow-removal calculus for bound quiver algebras.

Parses presentations kQ/I from ``.qv`` files, computes noncommutative
Groebner bases and minimal projective resolutions in exact arithmetic,
classifies removable / redundant arrow sets, constructs the arrow
reduced and arrow irredundant versions, checks the homological side
conditions (projective dimensions, homological supports, strongly-finite
right projective dimension) and builds trivial one-arrow extensions.
"""

from .fields import Field, FieldSpec
from .quiver import AlgebraSpec, Element, Path, Quiver, compose, split_by_arrows
from .parser import QvError, parse_file, parse_spec, serialize
from .groebner import (
    GroebnerBasis,
    NotAdmissibleUpTo,
    compute_groebner,
    is_monomial_ideal,
    normal_form,
)
from .algebra import (
    BoundQuiverAlgebra,
    NotPreRemovable,
    SectionMap,
    build_algebra,
    canonical_quotient,
    corner_dimension,
    loewy_length,
    multiply,
    opposite_algebra,
    strongly_connected,
)
from .modules import (
    FdBimodule,
    FdModule,
    IsoResult,
    bimodule_tensor,
    cyclic_module,
    ideal_bimodule,
    ideal_module,
    module_iso,
    restrict_along_section,
    simple_module,
)
from .homology import (
    PdVerdict,
    Resolution,
    ResolutionTooShort,
    SupportReport,
    embeds_simple_right,
    global_dimension,
    homological_supports,
    minimal_resolution,
    projective_cover,
    strongly_finite_check,
    tensor_dim,
    tor_dims,
)
from .removal import (
    Caps,
    RemovabilityReport,
    ReductionTrace,
    arrow_irredundant_version,
    arrow_reduced_version,
    gorenstein_exclusion,
    irreducibility_report,
    loop_exclusions,
    preremovable_check,
    redundant_arrows,
    removable_classify,
)
from .extensions import (
    ExtensionRequest,
    SandwichViolation,
    extension_verify,
    one_arrow_extension,
)

__version__ = "0.1.0"
