"""bellbox: analysis of 2-setting / 2-outcome bipartite coincidence
experiments and of the explicit C^4 constructions that model them.

The library is organized in thin layers: ``linalg`` (complex vectors and
matrices), ``tables`` (joint probability tables, marginals,
factorizability), ``bell`` (CHSH values, bounds, classification),
``hilbert`` (states, measurements, Born probabilities, entanglement
detection), ``models`` (built-in datasets and constructions) and a CLI
(``expfile``, ``report``, ``cli``).
"""

from .bell import (
    AmbiguousClassError,
    BOUNDS,
    Bounds,
    ChshResult,
    ZooClass,
    chsh,
    classify,
)
from .hilbert import (
    CANONICAL_ISO,
    SWAPPED_ISO,
    Isomorphism,
    Measurement,
    ModelVerdict,
    StateVector,
    bell_operator,
    born_probabilities,
    is_entangled_measurement,
    is_product_operator,
    is_product_vector,
    operator_from_measurement,
    realign,
    reshape,
    schmidt_coefficients,
    verify_model,
    verify_operator_model,
)
from .linalg import (
    CMatrix,
    CVector,
    apply,
    expectation,
    inner,
    is_hermitian,
    outer,
    quadratic_form,
)
from .models import (
    Fixture,
    NamedModel,
    animal_acts_data,
    animal_acts_model,
    basis_from_probabilities,
    get_fixture,
    get_model,
    vessels_alternative_model,
    vessels_data,
    vessels_model,
    vessels_separated_data,
)
from .tables import (
    Experiment,
    FactorizationVerdict,
    Factors,
    JointTable,
    MarginalLawReport,
    NegativeEntryError,
    NotNormalizableError,
    SettingPair,
    TableError,
    expectation_value,
    factorization_test,
    marginal_law_report,
    marginals,
    normalize,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousClassError",
    "BOUNDS",
    "Bounds",
    "CANONICAL_ISO",
    "CMatrix",
    "CVector",
    "ChshResult",
    "Experiment",
    "FactorizationVerdict",
    "Factors",
    "Fixture",
    "Isomorphism",
    "JointTable",
    "MarginalLawReport",
    "Measurement",
    "ModelVerdict",
    "NamedModel",
    "NegativeEntryError",
    "NotNormalizableError",
    "SWAPPED_ISO",
    "SettingPair",
    "StateVector",
    "TableError",
    "ZooClass",
    "animal_acts_data",
    "animal_acts_model",
    "apply",
    "basis_from_probabilities",
    "bell_operator",
    "born_probabilities",
    "chsh",
    "classify",
    "expectation",
    "expectation_value",
    "factorization_test",
    "get_fixture",
    "get_model",
    "inner",
    "is_entangled_measurement",
    "is_hermitian",
    "is_product_operator",
    "is_product_vector",
    "marginal_law_report",
    "marginals",
    "normalize",
    "operator_from_measurement",
    "outer",
    "quadratic_form",
    "realign",
    "reshape",
    "schmidt_coefficients",
    "vessels_alternative_model",
    "vessels_data",
    "vessels_model",
    "vessels_separated_data",
    "verify_model",
    "verify_operator_model",
]
