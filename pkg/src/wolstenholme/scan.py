"""Range scans: per-prime reports farmed out to workers, emitted in order."""

from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field
from typing import Callable, Iterator, TextIO

from .primes import MAX_SIEVE, primes_in
from .theorems import build_report

FIELDS = (
    "p",
    "v_binom_minus_1",
    "v_binom_saturated",
    "v_h1",
    "v_h2",
    "bern_p3",
    "bern_p5",
    "bern_big",
    "wolstenholme",
    "thm1_consistent",
    "thm2_consistent",
    "failures",
)

FIELD_TYPES = {
    "p": int,
    "v_binom_minus_1": int,
    "v_binom_saturated": bool,
    "v_h1": int,
    "v_h2": int,
    "bern_p3": int,
    "bern_p5": (int, type(None)),
    "bern_big": int,
    "wolstenholme": bool,
    "thm1_consistent": bool,
    "thm2_consistent": bool,
    "failures": list,
}


@dataclass(frozen=True)
class ScanConfig:
    lo: int
    hi: int
    jobs: int = 1
    format: str = "jsonl"
    deep: bool = False
    out: str | None = None

    def __post_init__(self):
        if not 7 <= self.lo < self.hi <= MAX_SIEVE:
            raise ValueError(f"scan range must satisfy 7 <= lo < hi <= 2^21, got [{self.lo}, {self.hi})")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if self.format not in ("jsonl", "csv"):
            raise ValueError(f"unknown format {self.format!r}")


@dataclass
class ScanSummary:
    count: int = 0
    flagged: list[int] = field(default_factory=list)
    inconsistent: list[int] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.inconsistent

    def trailer(self, cfg: ScanConfig) -> str:
        rate = self.count / self.elapsed if self.elapsed else float("inf")
        return (
            f"# scanned {self.count} primes in [{cfg.lo}, {cfg.hi}) jobs={cfg.jobs}: "
            f"wolstenholme={self.flagged} inconsistent={self.inconsistent} "
            f"elapsed={self.elapsed:.2f}s ({rate:.1f} primes/s)"
        )


def validate_record(rec: dict) -> dict:
    """Raise ValueError unless ``rec`` follows the JSON-lines schema exactly."""
    if tuple(rec) != FIELDS:
        raise ValueError(f"record keys {tuple(rec)} do not match schema")
    for key, ty in FIELD_TYPES.items():
        val = rec[key]
        # bool is an int subclass; keep the two apart
        if ty is int and isinstance(val, bool):
            raise ValueError(f"{key} must be an integer")
        if not isinstance(val, ty):
            raise ValueError(f"{key}={val!r} has the wrong type")
    if not all(isinstance(f, str) for f in rec["failures"]):
        raise ValueError("failures must be strings")
    return rec


def _report_chunk(primes: list[int], deep: bool) -> list[tuple[dict, bool]]:
    out = []
    for p in primes:
        r = build_report(p, deep)
        out.append((r.to_record(), r.ok))
    return out


def _chunks(primes: list[int], size: int) -> Iterator[list[int]]:
    for i in range(0, len(primes), size):
        yield primes[i : i + size]


def chunk_size(n_primes: int, jobs: int) -> int:
    # several chunks per worker so the expensive high end spreads out
    return max(1, min(256, n_primes // (jobs * 16) or 1))


def iter_reports(cfg: ScanConfig) -> Iterator[tuple[dict, bool]]:
    """(record, consistent) pairs in ascending p, whatever the worker schedule."""
    primes = primes_in((cfg.lo, cfg.hi))
    chunks = list(_chunks(primes, chunk_size(len(primes), cfg.jobs)))
    if cfg.jobs == 1:
        for chunk in chunks:
            yield from _report_chunk(chunk, cfg.deep)
        return
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        pending = {}
        submitted = 0
        buffer: dict[int, list] = {}
        next_out = 0
        window = cfg.jobs * 4
        while next_out < len(chunks):
            while submitted < len(chunks) and len(pending) < window:
                fut = pool.submit(_report_chunk, chunks[submitted], cfg.deep)
                pending[fut] = submitted
                submitted += 1
            done, _ = wait(pending, return_when=FIRST_COMPLETED)
            for fut in done:
                buffer[pending.pop(fut)] = fut.result()
            while next_out in buffer:
                yield from buffer.pop(next_out)
                next_out += 1


def _fmt_csv_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return ";".join(v)
    return str(v)


class RecordWriter:
    def __init__(self, stream: TextIO, fmt: str):
        self.stream = stream
        self.fmt = fmt
        if fmt == "csv":
            self._csv = csv.writer(stream, lineterminator="\n")
            self._csv.writerow(FIELDS)

    def write(self, rec: dict):
        if self.fmt == "jsonl":
            self.stream.write(json.dumps(rec) + "\n")
        else:
            self._csv.writerow([_fmt_csv_value(rec[f]) for f in FIELDS])


def run_scan(
    cfg: ScanConfig,
    stream: TextIO,
    on_flag: Callable[[int], None] | None = None,
) -> ScanSummary:
    summary = ScanSummary()
    writer = RecordWriter(stream, cfg.format)
    start = time.perf_counter()
    for rec, consistent in iter_reports(cfg):
        writer.write(rec)
        summary.count += 1
        if rec["wolstenholme"]:
            summary.flagged.append(rec["p"])
            if on_flag:
                on_flag(rec["p"])
        if not consistent:
            summary.inconsistent.append(rec["p"])
    stream.flush()
    summary.elapsed = time.perf_counter() - start
    return summary


def scan_to_string(cfg: ScanConfig) -> tuple[str, ScanSummary]:
    buf = io.StringIO()
    summary = run_scan(cfg, buf)
    return buf.getvalue(), summary


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("WOLST_JOBS", "1")))
    except ValueError:
        return 1
