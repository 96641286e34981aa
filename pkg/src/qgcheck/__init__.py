"""Exact verification toolkit for finite-dimensional quantum groups.

Two-tier design: structure constants and every algebraic law live in
exact rational-cyclotomic arithmetic (`Cyc`, `LinMap`), while the GNS
realization, the unitary multiplicative unitary and the modular operator
calculus run in float with pinned tolerances.  The `cli` module exposes
the same pipeline as the `qgcheck` command.
"""

from .duality import (AlgMultUnitary, Duality, bidual_map,
                      build_alg_mult_unitary, build_dual, check_biduality,
                      check_convolution_compat, check_dual, check_dual_modular,
                      check_hopf_star_iso, check_pentagon_and_lemmas,
                      check_radford)
from .errors import (CheckFailure, LegMismatch, ModelError, ParseError,
                     QGError, SingularMap, TierRefusal)
from .gns import (GnsRealization, analytic_suite, build_gns,
                  check_commutation_relations, check_coproduct_implementation,
                  check_invariance_and_kms, check_kac_triviality,
                  check_modular_groups, check_power_calculus,
                  check_regular_reps, check_w_properties,
                  complex_powers_as_multipliers)
from .hopf import (QGModel, check_cancellation, galois, galois_variants,
                   solve_antipode, solve_counit, validate_model,
                   verify_counit_antipode)
from .linalg import LinMap, Vec, det, inverse, kernel, rank, solve_linear
from .modelio import (emit_model, emit_morphism, emit_table, model_from_dict,
                      model_to_dict, parse_model, parse_morphism, parse_table,
                      write_report)
from .models import (BUILTIN_MODELS, GroupTable, build_drinfeld_double,
                     build_function_algebra, build_group_algebra,
                     build_sweedler, build_taft, builtin)
from .modular import HaarData, check_modular_structure, solve_haar
from .report import Checker, CheckRecord, Report, ensure
from .scalars import Cyc
from .subgroups import (DualMorphism, QGMorphism, build_dual_morphism,
                        certify_vaes, check_dual_morphism, check_expectation,
                        check_functoriality, compose_morphisms,
                        counit_morphism, identity_morphism,
                        restriction_morphism, validate_morphism)

__version__ = "0.1.0"

__all__ = [
    "AlgMultUnitary", "BUILTIN_MODELS", "CheckFailure", "CheckRecord",
    "Checker", "Cyc", "DualMorphism", "Duality", "GnsRealization",
    "GroupTable", "HaarData", "LegMismatch", "LinMap", "ModelError",
    "ParseError", "QGError", "QGModel", "QGMorphism", "Report",
    "SingularMap", "TierRefusal", "Vec", "analytic_suite", "bidual_map",
    "build_alg_mult_unitary", "build_drinfeld_double", "build_dual",
    "build_dual_morphism", "build_function_algebra", "build_gns",
    "build_group_algebra", "build_sweedler", "build_taft", "builtin",
    "certify_vaes", "check_biduality", "check_cancellation",
    "check_commutation_relations", "check_convolution_compat",
    "check_coproduct_implementation", "check_dual", "check_dual_modular",
    "check_dual_morphism", "check_expectation", "check_functoriality",
    "check_hopf_star_iso", "check_invariance_and_kms",
    "check_kac_triviality", "check_modular_groups",
    "check_modular_structure", "check_pentagon_and_lemmas",
    "check_power_calculus", "check_radford", "check_regular_reps",
    "check_w_properties", "complex_powers_as_multipliers",
    "compose_morphisms", "counit_morphism", "det", "emit_model",
    "emit_morphism", "emit_table", "ensure", "galois", "galois_variants",
    "identity_morphism", "inverse", "kernel", "model_from_dict",
    "model_to_dict", "parse_model", "parse_morphism", "parse_table",
    "rank", "restriction_morphism", "solve_antipode", "solve_counit",
    "solve_haar", "solve_linear", "validate_model", "validate_morphism",
    "verify_counit_antipode", "write_report",
]
