"""Command line interface for the verification workbench.

Verbs:
  verify MODEL [--suite algebraic|analytic|all] [--tol T] [--seed S]
               [--report OUT]
  dual MODEL -o OUT
  build-group --table FILE --kind function|group|double -o OUT
  build-taft --n N -o OUT
  subgroup --g FILE --h FILE --map FILE [--report OUT]

MODEL is a model file path or a built-in model name.  The verify suites:
"algebraic" runs every exact-arithmetic law (structure, integrals, dual,
pentagon, biduality), "analytic" runs the float GNS/modular layer, and
"all" runs both, recording a skip when the model sits outside the
analytic layer's standing assumptions.  Asking for the analytic suite
explicitly on such a model is refused.

Exit codes: 0 every executed check passed, 1 at least one check failed,
2 the input could not be used (parse error, invalid table or model
construction, explicit tier refusal).
"""

from __future__ import annotations

import argparse
import os
import sys
from contextlib import contextmanager

from . import duality as duality_mod
from . import gns as gns_mod
from .duality import (build_dual, check_biduality, check_convolution_compat,
                      check_dual, check_dual_modular,
                      check_pentagon_and_lemmas, check_radford)
from .errors import (CheckFailure, ModelError, ParseError, SingularMap,
                     TierRefusal)
from .gns import analytic_suite, build_gns
from .hopf import QGModel, validate_model
from .modelio import (emit_model, parse_model, parse_morphism, parse_table,
                      write_report)
from .models import (BUILTIN_MODELS, build_drinfeld_double,
                     build_function_algebra, build_group_algebra, build_taft,
                     builtin)
from .modular import check_modular_structure, solve_haar
from .report import FAIL, Checker, CheckRecord, Report
from .subgroups import (build_dual_morphism, certify_vaes,
                        check_dual_morphism, check_expectation,
                        validate_morphism)


def _load_model(ref: str) -> QGModel:
    if os.path.exists(ref):
        return parse_model(ref)
    if ref in BUILTIN_MODELS:
        return builtin(ref)
    raise ParseError(f"{ref}: not a model file or built-in name; "
                     f"built-ins: {', '.join(sorted(BUILTIN_MODELS))}")


def _has_failure(records) -> bool:
    return any(r.status == FAIL for r in records)


def _stage_failure(model: QGModel, stage: str, law: str, exc) -> CheckRecord:
    return CheckRecord(f"{model.name}.suite.{stage}", law, FAIL,
                       witness=str(exc))


def _algebraic_records(model: QGModel):
    """Exact-tier suite; returns (records, haar, duality), the latter two
    None when an earlier stage failed."""
    records = list(validate_model(model))
    if _has_failure(records):
        return records, None, None
    try:
        haar = solve_haar(model)
    except (ModelError, SingularMap) as e:
        records.append(_stage_failure(
            model, "haar", "invariant functional exists and is unique", e))
        return records, None, None
    records += check_modular_structure(haar)
    try:
        dd = build_dual(model, haar, validate=False)
    except (ModelError, SingularMap) as e:
        records.append(_stage_failure(
            model, "dual", "dual model construction succeeds", e))
        return records, haar, None
    records += check_dual(dd)
    records += check_dual_modular(dd)
    records += check_radford(dd)
    records += check_pentagon_and_lemmas(dd)
    records += check_convolution_compat(dd)
    records += check_biduality(dd)
    return records, haar, dd


def _analytic_records(model: QGModel, haar, dd, explicit: bool):
    try:
        g = build_gns(model, haar=haar, dual=dd)
    except TierRefusal as e:
        if explicit:
            raise
        ck = Checker(f"{model.name}.analytic")
        ck.skip("tier", "analytic layer runs under its standing assumptions",
                str(e))
        return ck.records
    return analytic_suite(g)


@contextmanager
def _overrides(tol, seed):
    saved = (gns_mod.TOL_IDENTITY, gns_mod.TOL_SPECTRAL,
             gns_mod.TOL_MULTIPLIER, gns_mod.SAMPLE_SEED,
             duality_mod.SAMPLE_SEED)
    try:
        if tol is not None:
            gns_mod.TOL_IDENTITY = tol
            gns_mod.TOL_SPECTRAL = tol * 100
            gns_mod.TOL_MULTIPLIER = tol * 10
        if seed is not None:
            gns_mod.SAMPLE_SEED = seed
            duality_mod.SAMPLE_SEED = seed
        yield
    finally:
        (gns_mod.TOL_IDENTITY, gns_mod.TOL_SPECTRAL,
         gns_mod.TOL_MULTIPLIER, gns_mod.SAMPLE_SEED,
         duality_mod.SAMPLE_SEED) = saved


def cmd_verify(args) -> int:
    model = _load_model(args.model)
    seed = args.seed if args.seed is not None else duality_mod.SAMPLE_SEED
    report = Report(title=f"verify {model.name}",
                    meta={"model": model.name, "dim": model.dim,
                          "suite": args.suite, "seed": seed,
                          "tol": args.tol})
    with _overrides(args.tol, args.seed):
        haar = dd = None
        structural_failure = False
        if args.suite in ("algebraic", "all"):
            records, haar, dd = _algebraic_records(model)
            report.add(records)
            structural_failure = _has_failure(records)
        if args.suite in ("analytic", "all") and not structural_failure:
            report.add(_analytic_records(
                model, haar, dd, explicit=args.suite == "analytic"))
    print(report.text_table())
    if args.report:
        write_report(report, args.report)
    return 0 if report.ok else 1


def cmd_dual(args) -> int:
    model = _load_model(args.model)
    dd = build_dual(model)
    emit_model(dd.dual, args.out)
    print(f"wrote {dd.dual.name} ({dd.dual.dim}-dim) to {args.out}")
    return 0


def cmd_build_group(args) -> int:
    table = parse_table(args.table)
    builders = {"function": build_function_algebra,
                "group": build_group_algebra,
                "double": build_drinfeld_double}
    model = builders[args.kind](table)
    emit_model(model, args.out)
    print(f"wrote {model.name} ({model.dim}-dim) to {args.out}")
    return 0


def cmd_build_taft(args) -> int:
    if args.n < 2:
        raise ParseError(f"taft order must be >= 2, got {args.n}")
    model = build_taft(args.n)
    emit_model(model, args.out)
    print(f"wrote {model.name} ({model.dim}-dim) to {args.out}")
    return 0


def cmd_subgroup(args) -> int:
    source = _load_model(args.g)
    target = _load_model(args.h)
    mor = parse_morphism(args.map, source, target)
    report = Report(title=f"subgroup {mor.label}",
                    meta={"source": source.name, "target": target.name})
    records = validate_morphism(mor)
    report.add(records)
    if not _has_failure(records):
        dm = build_dual_morphism(mor, validate=False)
        report.add(check_dual_morphism(dm))
        report.add(check_expectation(dm))
        report.add(certify_vaes(mor, dm))
    print(report.text_table())
    if args.report:
        write_report(report, args.report)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qgcheck",
        description="verification workbench for finite-dimensional "
                    "quantum group models")
    sub = p.add_subparsers(dest="verb", required=True)

    v = sub.add_parser("verify", help="run a verification suite on a model")
    v.add_argument("model", help="model file path or built-in name")
    v.add_argument("--suite", choices=["algebraic", "analytic", "all"],
                   default="all")
    v.add_argument("--tol", type=float, default=None,
                   help="identity-level tolerance for the analytic suite "
                        "(spectral and multiplier tolerances keep their "
                        "default ratios)")
    v.add_argument("--seed", type=int, default=None,
                   help="seed for sampled check families")
    v.add_argument("--report", default=None, help="write a JSON report here")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("dual", help="emit the dual model")
    d.add_argument("model", help="model file path or built-in name")
    d.add_argument("-o", "--out", required=True)
    d.set_defaults(func=cmd_dual)

    g = sub.add_parser("build-group",
                       help="build a model from a group table file")
    g.add_argument("--table", required=True)
    g.add_argument("--kind", choices=["function", "group", "double"],
                   required=True)
    g.add_argument("-o", "--out", required=True)
    g.set_defaults(func=cmd_build_group)

    t = sub.add_parser("build-taft",
                       help="build the finite Taft model of a given order")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("-o", "--out", required=True)
    t.set_defaults(func=cmd_build_taft)

    s = sub.add_parser("subgroup",
                       help="validate a morphism file and certify the "
                            "subgroup embedding")
    s.add_argument("--g", required=True, help="source model (the big one)")
    s.add_argument("--h", required=True, help="target model (the subgroup)")
    s.add_argument("--map", required=True, help="morphism file")
    s.add_argument("--report", default=None)
    s.set_defaults(func=cmd_subgroup)
    return p


def dispatch(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ModelError, SingularMap, TierRefusal) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except CheckFailure as e:
        print(f"check failed: {e}", file=sys.stderr)
        return 1


def main(argv=None) -> int:
    return dispatch(argv)


if __name__ == "__main__":
    sys.exit(main())
