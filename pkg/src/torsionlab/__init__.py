"""Workbench for torsion computations separating algebraic from topological
triangulated categories."""

from .steenrod import (
    BOCKSTEIN,
    Generator,
    Monomial,
    P,
    ParseError,
    Prime,
    PrimeMismatchError,
    Sq,
    SteenrodElement,
    SteenrodError,
    adem_normalize,
    admissible_basis,
    binomial_mod_p,
    degree,
    multiply,
    parse_expression,
)
from .oracle import OracleAlgebra, OracleElement, act, oracle_equal
from .modules import (
    DecompositionResult,
    FiniteModule,
    ModuleError,
    RelationViolation,
    act_element,
    consistency_check,
    direct_sum,
    hypothetical_Cb_module,
    is_decomposable,
    load_module,
    moore_module,
    save_module,
    shift,
    sphere_module,
    tensor,
    violation_classes,
)
from .stems import (
    AbelianGroup,
    ComputedGroup,
    GroupExtensionProblem,
    StemsTable,
    Unknown,
    associator_obstruction,
    cyclic,
    moore_endomorphisms,
    moore_homotopy,
    mult_by_n,
    positive_n_order,
    stems,
)
from .exotic import (
    Z4Morphism,
    Z4Triangle,
    check_TR1_cone,
    check_TR3_fill,
    distinguished_representatives,
    elementary_triangles,
    in_distinguished_class,
    two_order_zero_certificate,
    two_triangle,
    verify_axioms,
)
from .scenarios import (
    ScenarioReport,
    run_all,
    scenario_exotic,
    scenario_prop2,
    scenario_prop3,
    scenario_prop5,
    scenario_prop6,
)

__all__ = [
    "AbelianGroup",
    "BOCKSTEIN",
    "ComputedGroup",
    "DecompositionResult",
    "FiniteModule",
    "Generator",
    "GroupExtensionProblem",
    "ModuleError",
    "Monomial",
    "OracleAlgebra",
    "OracleElement",
    "P",
    "ParseError",
    "Prime",
    "PrimeMismatchError",
    "RelationViolation",
    "ScenarioReport",
    "Sq",
    "SteenrodElement",
    "SteenrodError",
    "StemsTable",
    "Unknown",
    "Z4Morphism",
    "Z4Triangle",
    "act",
    "act_element",
    "adem_normalize",
    "admissible_basis",
    "associator_obstruction",
    "binomial_mod_p",
    "check_TR1_cone",
    "check_TR3_fill",
    "consistency_check",
    "cyclic",
    "degree",
    "direct_sum",
    "distinguished_representatives",
    "elementary_triangles",
    "hypothetical_Cb_module",
    "in_distinguished_class",
    "is_decomposable",
    "load_module",
    "moore_endomorphisms",
    "moore_homotopy",
    "moore_module",
    "mult_by_n",
    "multiply",
    "oracle_equal",
    "parse_expression",
    "positive_n_order",
    "run_all",
    "save_module",
    "scenario_exotic",
    "scenario_prop2",
    "scenario_prop3",
    "scenario_prop5",
    "scenario_prop6",
    "shift",
    "sphere_module",
    "stems",
    "tensor",
    "two_order_zero_certificate",
    "two_triangle",
    "verify_axioms",
    "violation_classes",
]

__version__ = "0.1.0"
