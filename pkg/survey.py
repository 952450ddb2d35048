#!/usr/bin/env python3
"""
structconst fixture survey.

Runs check, forms, cohomology and rigidity over the standard algebras and
stores every rendered report. Designed to be run unattended via cron after
an upgrade, so stored reports can be compared across versions.

Usage:
    python3 survey.py                 # every fixture, reports stored
    python3 survey.py --only sl2      # one fixture
    python3 survey.py --workers 4     # fixtures computed in parallel
    python3 survey.py --dry-run       # don't write to database
"""

import argparse
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor, as_completed
from datetime import datetime

# Ensure imports work regardless of cwd
ROOT = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, ROOT)

from dotenv import load_dotenv

load_dotenv(os.path.join(ROOT, ".env"))

import db
import report
from algebra_core import build
from cohomology import THEORIES, VARIETY_OF, cohomology_summary
from identities import residual_report
from moduli import VARIETY_NAMES, rigidity_verdict

LOG_DIR = os.environ.get("STRUCTCONST_LOG_DIR", os.path.join(ROOT, "logs"))
log = logging.getLogger("survey")

# (builder, arg) pairs; the survey name is the built algebra's name.
FIXTURES = [
    ("dual_numbers", None),
    ("leibniz2", None),
    ("abelian", "2"),
    ("split_etale", "2"),
    ("split_etale", "3"),
    ("sl2", None),
    ("m2", None),
    ("semisimple", "2,1"),
]


def setup_logging() -> str:
    os.makedirs(LOG_DIR, exist_ok=True)
    log_file = os.path.join(LOG_DIR, f"survey_{datetime.now():%Y-%m-%d_%H%M%S}.log")
    logging.basicConfig(
        level=logging.INFO,
        format="%(asctime)s %(levelname)s %(message)s",
        handlers=[
            logging.FileHandler(log_file),
            logging.StreamHandler(),
        ],
    )
    return log_file


def _record(command: str, section: dict, desc: dict, seed: int, theory: str | None = None) -> dict:
    text = report.render(report.envelope(command, section, seed, algebra=desc))
    return {
        "command": command,
        "algebra": desc["name"],
        "dim": desc["dim"],
        "theory": theory,
        "seed": seed,
        "version": report.VERSION,
        "digest": report.digest(text),
        "payload": text,
    }


def analyse(builder: str, arg: str | None, seed: int) -> list[dict]:
    """Every report for one fixture, as db records."""
    x = build(builder, arg)
    desc = report.algebra_descriptor(x, f"builder:{builder}" + (f":{arg}" if arg else ""))
    records = [
        _record("check", report.membership_section(x), desc, seed),
        _record("forms", report.forms_section(x), desc, seed),
    ]
    for theory in THEORIES:
        if not residual_report(x, VARIETY_OF[theory]).is_member:
            continue
        records.append(_record("cohomology", report.summary_section(cohomology_summary(x, theory)),
                               desc, seed, theory))
        verdict = rigidity_verdict(x, VARIETY_NAMES[theory])
        records.append(_record("rigidity", report.verdict_section(verdict), desc, seed, theory))
    return records


def selected(only: str | None) -> list:
    if not only:
        return list(FIXTURES)
    chosen = [(b, a) for b, a in FIXTURES if only in (b, build(b, a).name)]
    if not chosen:
        raise SystemExit(f"No fixture named {only!r}")
    return chosen


def run_survey(fixtures: list, seed: int, workers: int = 1) -> tuple[list, dict]:
    """Analyse every fixture; a failing fixture is logged and counted, not fatal."""
    stats = {"fixtures": len(fixtures), "failed": 0, "reports": 0}
    records = []

    def collect(label, result):
        records.extend(result)
        stats["reports"] += len(result)
        log.info(f"{label}: {len(result)} reports")

    if workers <= 1:
        for builder, arg in fixtures:
            label = f"{builder}({arg or ''})"
            try:
                collect(label, analyse(builder, arg, seed))
            except Exception:
                log.exception(f"{label} failed")
                stats["failed"] += 1
    else:
        _run_parallel(fixtures, seed, workers, collect, stats)
    records.sort(key=lambda r: (r["algebra"], r["command"], r["theory"] or ""))
    return records, stats


def _run_parallel(fixtures, seed, workers, collect, stats):
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = {pool.submit(analyse, b, a, seed): f"{b}({a or ''})" for b, a in fixtures}
        for future in as_completed(futures):
            label = futures[future]
            try:
                collect(label, future.result())
            except Exception:
                log.exception(f"{label} failed")
                stats["failed"] += 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="structconst fixture survey")
    parser.add_argument("--only", help="Run one fixture (builder or algebra name)")
    parser.add_argument("--workers", type=int, default=1, help="Parallel worker processes")
    parser.add_argument("--seed", type=int, default=int(os.environ.get("STRUCTCONST_SEED", 20240611)))
    parser.add_argument("--dry-run", action="store_true", help="Don't write to database")
    args = parser.parse_args(argv)

    log_file = setup_logging()
    log.info("=" * 60)
    log.info("structconst survey started")
    log.info(f"Log file: {log_file}")

    before = db.count_reports()
    records, stats = run_survey(selected(args.only), args.seed, args.workers)

    if not args.dry_run:
        added = db.insert_reports(records)
        log.info(f"Stored {added} new reports ({before} before)")

    log.info("-" * 40)
    log.info(f"Fixtures: {stats['fixtures']}, failed: {stats['failed']}, reports: {stats['reports']}")
    log.info("Survey finished")
    log.info("=" * 60)
    return 1 if stats["failed"] else 0


if __name__ == "__main__":
    sys.exit(main())
