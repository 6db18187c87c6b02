"""Counting recurrences, the full coverage histogram, and sequence tables.

The headline identities: for any system of k pairwise-coprime moduli and
ANY choice of residue classes, the window [1, product] contains exactly
``free_det`` integers in no chosen class and ``available_det`` integers in
at most one. The histogram generalizes this to every multiplicity j: the
count of integers lying in exactly j classes is the x^j coefficient of
the polynomial prod_i ((p_i - 1) + x), since by CRT each of the 2^k
covered/uncovered patterns occurs for exactly prod-over-uncovered
(p_i - 1) integers per window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import CoverageCounts, ModulusSystem
from .determinant import available_det, free_det
from .errors import KTooLargeError

MAX_HISTOGRAM_K = 25


@dataclass(frozen=True)
class CoverageHistogram:
    """counts[j] = number of integers n in [1, product] with gamma(n) = j."""

    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class SequenceTable:
    """Consecutive terms of a named integer sequence, indexed from 1."""

    name: str
    terms: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        for position, (index, value) in enumerate(self.terms, start=1):
            if index != position:
                raise ValueError(f"indices must run 1..n, found {index} at {position}")
            if value <= 0:
                raise ValueError(f"term {index} is not strictly positive: {value}")

    def values(self) -> tuple[int, ...]:
        return tuple(v for _, v in self.terms)

    def bfile_lines(self) -> list[str]:
        """Lines in OEIS b-file format: "index value", index from 1."""
        return [f"{i} {v}" for i, v in self.terms]


def coverage_counts(system: ModulusSystem) -> CoverageCounts:
    """Exact free/available/occupied counts, independent of any assignment."""
    available = available_det(system)
    return CoverageCounts(
        available=available,
        free=free_det(system),
        occupied=system.product - available,
        product=system.product,
    )


def occ_recurrence(system: ModulusSystem) -> int:
    """Occupied count by its own recurrence, independent of available_det.

    occ(1) = 0; extending by modulus p copies the existing pattern p times
    and turns one previously exactly-once-covered integer per copy into a
    doubly covered one: occ -> P_prev + (p - 1) * occ - free_prev.
    """
    moduli = system.moduli
    occ = 0
    prefix_product = moduli[0]
    free = moduli[0] - 1
    for p in moduli[1:]:
        occ = prefix_product + (p - 1) * occ - free
        prefix_product *= p
        free *= p - 1
    return occ


def exact_coverage_histogram(system: ModulusSystem) -> CoverageHistogram:
    """Counts of integers at every coverage multiplicity j = 0..k.

    Dynamic programming over prod_i ((p_i - 1) + x) in O(k^2) exact
    big-integer operations; refused above k = 25 (generous: the window
    itself is astronomically large well before that).
    """
    if system.k > MAX_HISTOGRAM_K:
        raise KTooLargeError(
            f"histogram limited to {MAX_HISTOGRAM_K} moduli, got {system.k}"
        )
    coeffs = [1]
    for p in system.moduli:
        weight = p - 1
        nxt = [0] * (len(coeffs) + 1)
        for j, c in enumerate(coeffs):
            nxt[j] += c * weight
            nxt[j + 1] += c
        coeffs = nxt
    return CoverageHistogram(counts=tuple(coeffs))


def first_primes(count: int) -> list[int]:
    """The first ``count`` primes via a plain sieve with a Rosser bound."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if count < 6:
        return [2, 3, 5, 7, 11][:count]
    # p_n < n (ln n + ln ln n) for n >= 6
    bound = int(count * (math.log(count) + math.log(math.log(count)))) + 1
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    primes = [i for i, flag in enumerate(sieve) if flag]
    return primes[:count]


def _sequence_over_first_primes(name: str, n_terms: int, track_available: bool) -> SequenceTable:
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    primes = first_primes(n_terms)
    terms: list[tuple[int, int]] = []
    avail = primes[0]
    free = primes[0] - 1
    terms.append((1, avail if track_available else free))
    for t in range(1, n_terms):
        p = primes[t]
        avail = free + (p - 1) * avail
        free *= p - 1
        terms.append((t + 1, avail if track_available else free))
    return SequenceTable(name=name, terms=tuple(terms))


def oeis_a067549(n_terms: int) -> SequenceTable:
    """Available-count determinants over the first k primes, k = 1..n_terms."""
    return _sequence_over_first_primes("A067549", n_terms, track_available=True)


def oeis_a005867(n_terms: int) -> SequenceTable:
    """Free-count determinants over the first k primes: prod (p_i - 1)."""
    return _sequence_over_first_primes("A005867", n_terms, track_available=False)
