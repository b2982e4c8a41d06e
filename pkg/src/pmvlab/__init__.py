"""pmvlab: computational pseudo MV-algebras.

Finite algebras as explicit tables, interval algebras Gamma(G, u) over
presented lattice-ordered groups, their ideal/polar/summand structure, and
orthocompletions with largeness certificates.
"""

from .errors import PMVError, SchemaError
from .finite import (
    AxiomReport,
    FinitePMV,
    boolean_skeleton,
    check_axioms,
    classify,
    eval_term,
    is_boolean,
    riesz_split,
)
from .ideals import (
    FiniteIdeal,
    SymbolicIdeal,
    enumerate_ideals,
    generated_normal_ideal,
    ideal_group_correspondence,
    polar,
    polar_lattice,
    quotient,
    subdirect_decomposition,
)
from .lgroup import (
    GammaAlgebra,
    NCMatrix,
    Q,
    SubdirectPresentation,
    ZLex,
    make_finite_gamma,
    validate_presentation,
    xi_finite,
)
from .ortho import (
    is_large,
    is_orthocomplete,
    lub_preservation_check,
    minimal_projectable_extension,
    orthocomplete_group,
    orthocompletion,
    polar_correspondence,
    strong_unit_check,
    support,
    support_lattice,
)
from .summands import (
    classify_projectability,
    decompose,
    pseudocomplement,
    sum_boolean_iso,
    summand_ideals,
)
from .documents import AlgebraDocument, canonical_json, parse_document
from .verify import run_suite

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
