"""Benchmark harness: suite definitions over the bundled instance corpus and
the per-instance seed sweep reporting generation-of-first-solution."""

from __future__ import annotations

import json
import math
import statistics
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

from .engine import GpParams, evolve
from .errors import InstanceError
from .instance_io import load_instance


@dataclass(frozen=True)
class BenchCase:
    id: str
    description: str
    filename: str


SUITES: dict[str, tuple[BenchCase, ...]] = {
    "rnp": (
        BenchCase("RNP-1", "4x4 table, 6 obstacles", "rnp-1.sexp"),
        BenchCase("RNP-2", "another 4x4 table, 6 obstacles", "rnp-2.sexp"),
        BenchCase("RNP-3", "8x8 table, 18 obstacles (walled, pushes required)", "rnp-3.sexp"),
        BenchCase("RNP-4", "50x50 table, no obstacles", "rnp-4.sexp"),
        BenchCase("RNP-5", "100x100 table, no obstacles", "rnp-5.sexp"),
        BenchCase("RNP-6", "100x100 table, same obstacle positions as RNP-1", "rnp-6.sexp"),
        BenchCase("RNP-7", "100x100 table, same obstacle positions as RNP-2", "rnp-7.sexp"),
        BenchCase("RNP-8", "100x100 table, same obstacle positions as RNP-3", "rnp-8.sexp"),
    ),
    "2rnp": (
        BenchCase("2RNP-1", "8x8 table, no obstacles", "2rnp-1.sexp"),
        BenchCase("2RNP-2", "8x8 table, 2 obstacles", "2rnp-2.sexp"),
        BenchCase("2RNP-3", "8x8 table, 5 obstacles", "2rnp-3.sexp"),
        BenchCase("2RNP-4", "8x8 table, 10 obstacles", "2rnp-4.sexp"),
        BenchCase("2RNP-5", "100x100 table, 18 obstacles", "2rnp-5.sexp"),
    ),
    "bp": (
        BenchCase("BP-1", "4 objects, 5 locations, 1 briefcase", "bp-1.sexp"),
        BenchCase("BP-2", "5 objects, 5 locations, 1 briefcase", "bp-2.sexp"),
        BenchCase("BP-3", "5 objects, 5 locations, 5 briefcases", "bp-3.sexp"),
        BenchCase("BP-4", "10 objects, 10 locations, 1 briefcase", "bp-4.sexp"),
        BenchCase("BP-5", "10 objects, 10 locations, 2 briefcases", "bp-5.sexp"),
        BenchCase("BP-6", "10 objects, 10 locations, 5 briefcases", "bp-6.sexp"),
        BenchCase("BP-7", "10 objects, 10 locations, 10 briefcases", "bp-7.sexp"),
    ),
}


def default_corpus_dir() -> Path:
    return Path(__file__).parent / "corpus"


@dataclass
class BenchRow:
    case: BenchCase
    gens: list[Optional[int]]  # first-solution generation per seed, None = unsolved

    @property
    def median(self) -> Optional[float]:
        med = statistics.median(math.inf if g is None else g for g in self.gens)
        return None if math.isinf(med) else med


@dataclass
class BenchReport:
    suite: str
    rows: list[BenchRow]

    def to_text(self) -> str:
        id_w = max(len(r.case.id) for r in self.rows)
        desc_w = max(len(r.case.description) for r in self.rows)
        lines = []
        for r in self.rows:
            med = _fmt_gen(r.median)
            lines.append(f"{r.case.id:<{id_w}} | {r.case.description:<{desc_w}} | {med}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = [
            {
                "id": r.case.id,
                "description": r.case.description,
                "first_solution_gens": r.gens,
                "median": r.median,
            }
            for r in self.rows
        ]
        return json.dumps({"suite": self.suite, "results": payload}, indent=2) + "\n"


def _fmt_gen(value: Optional[float]) -> str:
    if value is None:
        return "-"
    if value == int(value):
        return str(int(value))
    return str(value)


def run_bench(
    suite: str,
    params: GpParams,
    runs: int = 1,
    workers: int = 1,
    corpus: Optional[Path] = None,
) -> BenchReport:
    if suite not in SUITES:
        raise InstanceError(f"unknown suite '{suite}' (known: {', '.join(sorted(SUITES))})")
    corpus = corpus or default_corpus_dir()
    rows = []
    for case in SUITES[suite]:
        path = Path(corpus) / case.filename
        if not path.exists():
            raise InstanceError(f"missing corpus file for {case.id}: {path}")
        instance = load_instance(path)
        gens: list[Optional[int]] = []
        for run in range(runs):
            run_params = replace(
                params, seed=params.seed + run, stop_on_first_solution=True
            )
            result = evolve(instance, run_params, workers=workers)
            gens.append(result.log.first_solution_gen)
        rows.append(BenchRow(case, gens))
    return BenchReport(suite, rows)
