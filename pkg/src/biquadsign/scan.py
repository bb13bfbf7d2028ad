"""Prime-range scans: run the per-prime checks over a range and collect the records.

Primes are farmed out to a process pool one at a time; results are put back
in order of p, so the output does not depend on the number of workers.
"""

from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path

from .arith import primes_in_range
from .checks import CHECKS, DEFAULT_SEED, CheckRecord, verify_prime

WORKERS_ENV = "BIQUADSIGN_WORKERS"
DEFAULT_MAX_P = 10_000
CLASS_FILTERS = {
    "1mod8": (8, 1),
    "9mod16": (16, 9),
    "1mod16": (16, 1),
    "all": (4, 1),
}
CSV_COLUMNS = ("p", "check", "case", "g", "t", "m", "expected", "actual", "pass")


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"{WORKERS_ENV} must be positive")
    return n


@dataclass
class ScanConfig:
    min_p: int = 17
    max_p: int = DEFAULT_MAX_P
    class_filter: str = "1mod8"
    checks: tuple[str, ...] = tuple(CHECKS)
    roots_mode: str = "first"
    workers: int = field(default_factory=default_workers)
    output_path: str | None = None
    output_format: str = "jsonl"
    seed: int = DEFAULT_SEED
    exhaustive: bool = False
    per_value: bool = False

    def __post_init__(self):
        if self.min_p > self.max_p:
            raise ValueError(f"min_p={self.min_p} exceeds max_p={self.max_p}")
        if self.class_filter not in CLASS_FILTERS:
            raise ValueError(f"class_filter must be one of {sorted(CLASS_FILTERS)}")
        self.checks = tuple(self.checks)
        unknown = set(self.checks) - set(CHECKS)
        if unknown:
            raise ValueError(f"unknown checks: {sorted(unknown)}")
        if self.roots_mode not in ("first", "all"):
            raise ValueError("roots_mode must be 'first' or 'all'")
        if self.workers < 1:
            raise ValueError("workers must be positive")
        if self.output_format not in ("jsonl", "csv"):
            raise ValueError("output_format must be 'jsonl' or 'csv'")

    def primes(self) -> list[int]:
        modulus, residue = CLASS_FILTERS[self.class_filter]
        return primes_in_range(self.min_p, self.max_p, (residue, modulus))


@dataclass
class ScanReport:
    config: ScanConfig
    primes: list[int]
    records: list[CheckRecord]
    elapsed: float = 0.0

    @property
    def discrepancies(self) -> list[CheckRecord]:
        return [r for r in self.records if not r.passed]

    def tallies(self) -> dict[str, tuple[int, int]]:
        """check -> (passed, total), in registry order."""
        out = {name: [0, 0] for name in self.config.checks}
        for r in self.records:
            t = out.setdefault(r.check, [0, 0])
            t[0] += r.passed
            t[1] += 1
        return {k: (v[0], v[1]) for k, v in out.items()}


def _prime_bundle(p: int, config: ScanConfig) -> list[CheckRecord]:
    return verify_prime(p, config.checks, all_roots=config.roots_mode == "all",
                        exhaustive=config.exhaustive, per_value=config.per_value, seed=config.seed)


def run_scan(config: ScanConfig) -> ScanReport:
    start = time.perf_counter()
    primes = config.primes()
    job = partial(_prime_bundle, config=config)
    if config.workers == 1 or len(primes) <= 1:
        bundles = [job(p) for p in primes]
    else:
        # largest primes first so the slow bundles do not trail at the end
        order = sorted(primes, reverse=True)
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            by_p = dict(zip(order, pool.map(job, order)))
        bundles = [by_p[p] for p in primes]
    records = [r for bundle in bundles for r in bundle]
    report = ScanReport(config, primes, records, time.perf_counter() - start)
    if config.output_path is not None:
        write_report(report, config.output_path, config.output_format)
    return report


# -- serialization -------------------------------------------------------------


def to_jsonl(records) -> str:
    return "".join(json.dumps(r.to_json(), separators=(",", ":")) + "\n" for r in records)


def to_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in records:
        row = r.to_json()
        writer.writerow({k: row.get(k, "") for k in CSV_COLUMNS})
    return buf.getvalue()


def write_report(report: ScanReport, path, fmt: str = "jsonl") -> None:
    text = to_jsonl(report.records) if fmt == "jsonl" else to_csv(report.records)
    Path(path).write_text(text, encoding="utf-8")


def read_jsonl(path) -> list[CheckRecord]:
    with open(path, encoding="utf-8") as fh:
        return [CheckRecord.from_json(json.loads(line)) for line in fh if line.strip()]


def read_csv(path) -> list[CheckRecord]:
    def cell(v: str):
        if v == "":
            return None
        try:
            return int(v)
        except ValueError:
            return v

    out = []
    with open(path, encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            obj = {k: cell(row[k]) for k in CSV_COLUMNS if k not in ("check", "case", "pass")}
            obj = {k: v for k, v in obj.items() if v is not None}
            obj.update(check=row["check"], case=row["case"])
            obj["pass"] = row["pass"] == "True"
            out.append(CheckRecord.from_json(obj))
    return out


def report_summarize(report: ScanReport) -> str:
    tallies = report.tallies()
    width = max([len("check")] + [len(k) for k in tallies])
    lines = [f"primes scanned: {len(report.primes)}",
             f"{'check':<{width}}  {'pass':>8}  {'total':>8}  {'fail':>6}"]
    for name, (good, total) in tallies.items():
        lines.append(f"{name:<{width}}  {good:>8}  {total:>8}  {total - good:>6}")
    bad = report.discrepancies
    lines.append(f"discrepancies: {len(bad)}")
    for r in bad:
        extra = "".join(f" {k}={getattr(r, k)}" for k in ("g", "t", "m") if getattr(r, k) is not None)
        lines.append(f"  p={r.p} {r.check} [{r.case}]{extra}: expected {r.expected}, actual {r.actual}")
    lines.append(f"wall-clock: {report.elapsed:.2f} s")
    return "\n".join(lines)
