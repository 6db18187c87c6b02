"""Brute-force sieve over [1, product]: the ground truth for the identities.

For a concrete residue assignment the sieve walks the window in chunks,
bumps a one-byte coverage counter for every member of every progression
(first member per chunk located by modular arithmetic, no per-integer
trial division), and bins the counters into an exact histogram. Chunks
are independent and merge by integer addition, so any partition of the
window, and any degree of parallelism, produces identical results.
"""

from __future__ import annotations

import itertools
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .core import CoverageCounts, ModulusSystem, ResidueAssignment
from .counting import CoverageHistogram, coverage_counts
from .errors import ProductTooLargeError, TooManyAssignmentsError, ValidationError

DEFAULT_CHUNK_SIZE = 1 << 20
DEFAULT_PRODUCT_LIMIT = 10**9
EXHAUSTIVE_ASSIGNMENT_BUDGET = 10**6


@dataclass(frozen=True)
class SieveConfig:
    """Execution knobs for the sieve; results never depend on them."""

    chunk_size: int = DEFAULT_CHUNK_SIZE
    product_limit: int = DEFAULT_PRODUCT_LIMIT
    threads: int = 1  # 0 = one worker per CPU

    def __post_init__(self) -> None:
        if self.chunk_size < 1:
            raise ValueError("chunk_size must be >= 1")
        if self.product_limit < 1:
            raise ValueError("product_limit must be >= 1")
        if self.threads < 0:
            raise ValueError("threads must be >= 0")


@dataclass(frozen=True)
class IndependenceReport:
    """Outcome of sieving one system under many residue assignments."""

    assignments_tested: int
    all_match: bool
    expected: CoverageCounts
    mismatches: tuple[tuple[tuple[int, ...], CoverageCounts], ...] = ()


def _check_window(system: ModulusSystem, assignment: ResidueAssignment,
                  config: SieveConfig) -> None:
    if system.product > config.product_limit:
        raise ProductTooLargeError(
            f"product {system.product} exceeds sieve limit {config.product_limit}"
        )
    if len(assignment.residues) != system.k:
        raise ValidationError(
            f"assignment has {len(assignment.residues)} residues for {system.k} moduli"
        )


def _chunk_histogram(lo: int, hi: int, moduli: tuple[int, ...],
                     residues: tuple[int, ...]) -> np.ndarray:
    """Coverage histogram of the window slice [lo, hi)."""
    buf = np.zeros(hi - lo, dtype=np.uint8)
    for p, r in zip(moduli, residues):
        buf[(r - lo) % p :: p] += 1
    return np.bincount(buf, minlength=len(moduli) + 1)


def sieve_histogram(
    system: ModulusSystem,
    assignment: ResidueAssignment,
    config: SieveConfig | None = None,
) -> CoverageHistogram:
    """Exact histogram of coverage multiplicities by direct enumeration."""
    config = config or SieveConfig()
    _check_window(system, assignment, config)
    product = system.product
    k = system.k
    moduli = system.moduli
    residues = tuple(r % p for r, p in zip(assignment.residues, moduli))

    bounds = list(range(1, product + 1, config.chunk_size)) + [product + 1]
    chunks = list(zip(bounds[:-1], bounds[1:]))
    workers = config.threads or os.cpu_count() or 1
    totals = [0] * (k + 1)
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = pool.map(
                lambda span: _chunk_histogram(span[0], span[1], moduli, residues),
                chunks,
            )
            for hist in partials:
                for j in range(k + 1):
                    totals[j] += int(hist[j])
    else:
        for lo, hi in chunks:
            hist = _chunk_histogram(lo, hi, moduli, residues)
            for j in range(k + 1):
                totals[j] += int(hist[j])
    return CoverageHistogram(counts=tuple(totals))


def oracle_counts(
    system: ModulusSystem,
    assignment: ResidueAssignment,
    config: SieveConfig | None = None,
) -> CoverageCounts:
    """Free/available/occupied counts as the sieve actually observes them."""
    counts = sieve_histogram(system, assignment, config).counts
    return CoverageCounts(
        available=counts[0] + counts[1],
        free=counts[0],
        occupied=sum(counts[2:]),
        product=system.product,
    )


def _random_assignments(
    system: ModulusSystem, trials: int, seed: int
) -> Iterator[tuple[int, ...]]:
    rng = random.Random(seed)
    for _ in range(trials):
        yield tuple(rng.randrange(p) for p in system.moduli)


def residue_independence_check(
    system: ModulusSystem,
    trials: int = 20,
    seed: int = 0,
    config: SieveConfig | None = None,
    exhaustive: bool = False,
) -> IndependenceReport:
    """Sieve many assignments and compare each against the recurrence counts.

    Random mode draws ``trials`` assignments from a generator seeded with
    ``seed`` (each residue uniform in [0, p)), so reports are reproducible.
    Exhaustive mode enumerates every assignment; the assignment space has
    exactly ``product`` elements, so it is refused beyond the budget.
    """
    config = config or SieveConfig()
    expected = coverage_counts(system)
    if exhaustive:
        if system.product > EXHAUSTIVE_ASSIGNMENT_BUDGET:
            raise TooManyAssignmentsError(
                f"{system.product} assignments exceed the exhaustive budget "
                f"{EXHAUSTIVE_ASSIGNMENT_BUDGET}"
            )
        candidates = itertools.product(*(range(p) for p in system.moduli))
    else:
        if trials < 1:
            raise ValidationError("trials must be >= 1")
        candidates = _random_assignments(system, trials, seed)

    tested = 0
    mismatches: list[tuple[tuple[int, ...], CoverageCounts]] = []
    for residues in candidates:
        observed = oracle_counts(system, ResidueAssignment(residues), config)
        tested += 1
        if observed != expected and len(mismatches) < 5:
            mismatches.append((residues, observed))
    return IndependenceReport(
        assignments_tested=tested,
        all_match=not mismatches,
        expected=expected,
        mismatches=tuple(mismatches),
    )
