#!/usr/bin/env python3
"""
structconst command-line entry point.

Parses or builds an algebra, runs one analysis, prints the JSON report on
standard output and a human summary on standard error.

Usage:
    python3 cli.py check --builder sl2
    python3 cli.py check algebra.json
    python3 cli.py cohomology --builder m2 --theory hochschild
    python3 cli.py forms --builder leibniz2
    python3 cli.py rigidity --builder split_etale --arg 3 --theory comm
    python3 cli.py stratum --builder m2 --theory alg
    python3 cli.py incidence --builder dual_numbers
    python3 cli.py count assoc 10 --witnesses
    python3 cli.py equivariance --seed 7 --dim 2
    python3 cli.py show --builder sl2 > sl2.json

Exit codes: 0 success, 1 unexpected error, 2 malformed input,
3 off-variety request, 4 internal inconsistency or failed law.
"""

import argparse
import logging
import os
import sys

# Ensure imports work regardless of cwd
ROOT = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, ROOT)

from dotenv import load_dotenv

load_dotenv(os.path.join(ROOT, ".env"))

from algebra_core import BUILDERS, AlgebraFormatError, DimensionMismatchError, build, load, to_json
from exact_linalg import PRIME_FIELD, RATIONAL, SingularMatrixError
from identities import InconsistentComputationError, OffVarietyError
import report

log = logging.getLogger("structconst")

DEFAULT_SEED = 20240611

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_FORMAT = 2
EXIT_OFF_VARIETY = 3
EXIT_INCONSISTENT = 4

THEORY_CHOICES = ["alg", "comm", "leib", "lie", "hochschild", "harrison", "leibniz", "ce"]
# Commands whose ranks honour --field; every other report is exact.
FIELD_COMMANDS = ("cohomology", "rigidity")


def default_seed() -> int:
    return int(os.environ.get("STRUCTCONST_SEED", DEFAULT_SEED))


class CommandFailed(Exception):
    """A command ran but its result is a contract violation (e.g. a failed law)."""

    def __init__(self, message: str, report_dict: dict):
        super().__init__(message)
        self.report = report_dict


# ---------------------------------------------------------------------------
# Input
# ---------------------------------------------------------------------------
def load_input(args):
    """Return (MulTable, descriptor) from a file argument or --builder."""
    if args.builder and args.file:
        raise AlgebraFormatError("give either an algebra file or --builder, not both")
    if args.builder:
        x = build(args.builder, args.arg)
        source = f"builder:{args.builder}" + (f":{args.arg}" if args.arg else "")
    elif args.file:
        x = load(args.file)
        source = args.file
    else:
        raise AlgebraFormatError("no input: give an algebra file or --builder NAME")
    return x, report.algebra_descriptor(x, source)


# ---------------------------------------------------------------------------
# Commands. Each returns (result section, one-line human summary, input descriptor or None).
# ---------------------------------------------------------------------------
def cmd_check(args):
    x, desc = load_input(args)
    section = report.membership_section(x)
    flags = ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in section["flags"].items())
    return section, f"{x.name or desc['source']}: {flags}", desc


def cmd_cohomology(args):
    from cohomology import cohomology_summary
    from moduli import resolve_theory

    x, desc = load_input(args)
    theory = resolve_theory(args.theory)
    summary = cohomology_summary(x, theory, args.field)
    line = (f"{x.name or desc['source']} [{theory}]: z1={summary.z1} b1={summary.b1} "
            f"z2={summary.z2} b2={summary.b2} h2={summary.h2} ({summary.rank_path})")
    return report.summary_section(summary), line, desc


def cmd_forms(args):
    x, desc = load_input(args)
    section = report.forms_section(x)
    line = (f"{x.name or desc['source']}: trace discriminant {section['trace']['discriminant']}, "
            f"Killing discriminant {section['killing']['discriminant']}")
    return section, line, desc


def cmd_rigidity(args):
    from moduli import rigidity_verdict

    x, desc = load_input(args)
    verdict = rigidity_verdict(x, args.theory, args.field)
    line = (f"{x.name or desc['source']} [{verdict.theory}]: variety tangent {verdict.variety_tangent_dim}, "
            f"orbit tangent {verdict.orbit_tangent_dim}, rigid={verdict.rigid_in_moduli}")
    return report.verdict_section(verdict), line, desc


def cmd_stratum(args):
    from moduli import stratum_invariant

    x, desc = load_input(args)
    invariant = stratum_invariant(x, args.theory)
    line = f"{x.name or desc['source']} [{invariant.theory}]: rank d2 = {invariant.rank_d2}"
    return report.stratum_section(invariant), line, desc


def cmd_incidence(args):
    from identities import is_associative, is_leibniz
    from incidence import fiber_as, fiber_leib

    x, desc = load_input(args)
    section = {"associative_fiber": report.fiber_section(fiber_as(x))}
    if is_leibniz(x):
        section["leibniz_fiber"] = report.fiber_section(fiber_leib(x))
    section["diagonal_member"] = is_associative(x)
    dims = ", ".join(f"{k} {v['dim']}" for k, v in section.items() if isinstance(v, dict))
    return section, f"{x.name or desc['source']}: {dims}", desc


def cmd_count(args):
    from counting import n_assoc, n_lie

    count = n_assoc if args.kind == "assoc" else n_lie
    result = count(args.n, witnesses=args.witnesses)
    return report.count_section(args.kind, result), f"N_{args.kind}({args.n}) = {result.value}", None


def cmd_equivariance(args):
    from equivariance import DEFAULT_DIMS, run_battery

    dims = tuple(args.dim) if args.dim else DEFAULT_DIMS
    battery = run_battery(args.seed, dims, args.trials)
    section = report.battery_section(battery)
    failed = [f"{law.name}@{law.dim}" for law in battery.laws if not law.passed]
    line = "all laws pass" if not failed else f"failed laws: {', '.join(failed)}"
    if failed:
        raise CommandFailed(line, section)
    return section, line, None


def cmd_show(args):
    x, _ = load_input(args)
    sys.stdout.write(to_json(x))
    return None, f"{x.name}: dim {x.dim}", None


COMMANDS = {
    "check": cmd_check,
    "cohomology": cmd_cohomology,
    "forms": cmd_forms,
    "rigidity": cmd_rigidity,
    "stratum": cmd_stratum,
    "incidence": cmd_incidence,
    "count": cmd_count,
    "equivariance": cmd_equivariance,
    "show": cmd_show,
}


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help=f"Seed for randomized checks (default {DEFAULT_SEED})")
    common.add_argument("--field", choices=[RATIONAL, PRIME_FIELD], default=RATIONAL,
                        help="prime: ranks modulo 2^31-1, advisory only")
    common.add_argument("--store", action="store_true", help="Store the report in the SQLite store")
    common.add_argument("--log-file", help="Also write the log to this file")
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging")

    parser = argparse.ArgumentParser(prog="structconst", description="Exact structure-constant algebra toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(p):
        p.add_argument("file", nargs="?", help="Algebra file (JSON)")
        p.add_argument("--builder", choices=sorted(BUILDERS), help="Use a standard algebra instead of a file")
        p.add_argument("--arg", help="Builder size or block profile, e.g. 3 or 2,1")
        return p

    with_input(sub.add_parser("check", parents=[common], help="Variety membership and residuals"))
    p = with_input(sub.add_parser("cohomology", parents=[common], help="Degree <= 2 cohomology dimensions"))
    p.add_argument("--theory", choices=THEORY_CHOICES, required=True)
    with_input(sub.add_parser("forms", parents=[common], help="Trace and Killing forms, characters, kernels"))
    p = with_input(sub.add_parser("rigidity", parents=[common], help="Tangent dimensions and rigidity verdict"))
    p.add_argument("--theory", choices=THEORY_CHOICES, required=True)
    p = with_input(sub.add_parser("stratum", parents=[common], help="Rank of the degree-2 differential"))
    p.add_argument("--theory", choices=THEORY_CHOICES, required=True)
    with_input(sub.add_parser("incidence", parents=[common], help="Fiber dimensions of the incidence maps"))
    with_input(sub.add_parser("show", parents=[common], help="Print an algebra in the file format"))

    p = sub.add_parser("count", parents=[common], help="Orbit counts N_assoc(n) and N_lie(n)")
    p.add_argument("kind", choices=["assoc", "lie"])
    p.add_argument("n", type=int)
    p.add_argument("--witnesses", action="store_true", help="List the multisets realizing the count")

    p = sub.add_parser("equivariance", parents=[common], help="Seeded GL(V) property battery")
    p.add_argument("--dim", type=int, action="append", choices=[2, 3], help="Dimension (repeatable; default 2 and 3)")
    p.add_argument("--trials", type=int, default=20, help="Random group elements per law (default 20)")
    return parser


def setup_logging(verbose: bool = False, log_file: str | None = None) -> None:
    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(message)s",
        handlers=handlers,
        force=True,
    )


def store_report(command: str, text: str, desc: dict | None, args) -> None:
    import db

    added = db.insert_report({
        "command": command,
        "algebra": desc["name"] if desc else None,
        "dim": desc["dim"] if desc else None,
        "theory": getattr(args, "theory", None),
        "seed": args.seed,
        "version": report.VERSION,
        "digest": report.digest(text),
        "payload": text,
    })
    log.info("Report stored" if added else "Identical report already stored")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose, args.log_file)
    if args.seed is None:
        args.seed = default_seed()
    field = args.field if args.command in FIELD_COMMANDS else RATIONAL

    try:
        section, line, desc = COMMANDS[args.command](args)
    except CommandFailed as e:
        sys.stdout.write(report.render(report.envelope(args.command, e.report, args.seed, field)))
        log.error(str(e))
        return EXIT_INCONSISTENT
    except (AlgebraFormatError, DimensionMismatchError, SingularMatrixError) as e:
        log.error(f"Invalid input: {e}")
        return EXIT_FORMAT
    except OffVarietyError as e:
        log.error(f"Off-variety request: {e}")
        return EXIT_OFF_VARIETY
    except InconsistentComputationError as e:
        log.error(f"Internal inconsistency: {e}")
        return EXIT_INCONSISTENT
    except ValueError as e:
        log.error(str(e))
        return EXIT_FORMAT
    except Exception:
        log.exception(f"{args.command} failed")
        return EXIT_UNEXPECTED

    log.info(line)
    if section is None:
        return EXIT_OK
    text = report.render(report.envelope(args.command, section, args.seed, field, desc))
    sys.stdout.write(text)
    if args.store:
        store_report(args.command, text, desc, args)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
