"""Factorization of finite model sets, Hamming revision that respects it, and
specificity-based preferential semantics for defaults.

Everything works over a finite, ordered propositional language; model sets
are enumerated explicitly.
"""

from .defaults import (
    Default,
    PreferenceGraph,
    build_preference,
    extract_defaults,
    minimal_models,
    more_specific,
    nm_consequence,
    round_trip,
    separates,
)
from .errors import (
    EmptyModelSetError,
    FormulaSyntaxError,
    LanguageMismatchError,
    LanguageTooLargeError,
    NotJointlyFactorizableError,
    NotRealizableError,
    PartitionError,
    SemanticError,
    SplitLogicError,
    UnknownVariableError,
    UsageError,
)
from .factorization import (
    Partition,
    brute_force_finest,
    common_refinement,
    finest_factorization,
    is_factorization,
    is_refinement,
    restrict_partition,
)
from .kernels import BACKEND_NAME
from .language import Language
from .logic import entails, formula_of_models, models_of, parse_formula, vars_of
from .models import (
    Assignment,
    ModelSet,
    PartialAssignment,
    extend_partial,
    free_product,
    glue,
    project,
)
from .recoding import Recoding, apply_recoding, search_factorizing_recoding
from .revision import (
    WeightProfile,
    hamming_count,
    hamming_set,
    revise,
    revise_componentwise,
    revise_count,
    revise_set,
)

__version__ = "0.1.0"
