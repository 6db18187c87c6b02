"""Validated domain types for systems of arithmetic progressions.

A modulus system is an ordered sequence of pairwise-distinct moduli
(primes by default, pairwise-coprime integers behind an explicit flag)
whose product defines the counting window [1, product]. An assignment
picks one residue class per modulus; ``gamma`` is the per-integer
coverage multiplicity: in how many of the chosen classes an integer lies.

Everything here is immutable after construction and all functions are
pure, so concurrent use needs no coordination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    DuplicateModulusError,
    EmptyModuliError,
    ModulusTooLargeError,
    ModulusTooSmallError,
    NotCoprimeError,
    NotPrimeError,
    OutOfRangeError,
    ValidationError,
)

MAX_MODULUS = 2**64 - 1

# Known deterministic Miller-Rabin witness set for every n < 3.3e24,
# which covers the full 64-bit modulus range accepted above.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test for 0 <= n <= 2**64 - 1."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class ModulusSystem:
    """k pairwise-distinct moduli in user order, with their exact product."""

    moduli: tuple[int, ...]
    product: int
    coprime_mode: bool = False

    @property
    def k(self) -> int:
        return len(self.moduli)


@dataclass(frozen=True)
class ResidueAssignment:
    """One residue per modulus, each reduced into [0, p_i)."""

    residues: tuple[int, ...]


@dataclass(frozen=True)
class CoverageCounts:
    """Exact window counts: gamma = 0 (free), <= 1 (available), >= 2 (occupied)."""

    available: int
    free: int
    occupied: int
    product: int

    def __post_init__(self) -> None:
        if min(self.available, self.free, self.occupied, self.product) < 0:
            raise ValueError("coverage counts must be nonnegative")
        if self.available + self.occupied != self.product:
            raise ValueError("available + occupied must equal product")
        if not self.free <= self.available <= self.product:
            raise ValueError("free <= available <= product violated")


def validate_modulus_system(
    moduli: Iterable[int], coprime_mode: bool = False
) -> ModulusSystem:
    """Validate moduli and return the system with its exact product.

    Order is preserved. With ``coprime_mode`` false every modulus must be
    prime; with it true pairwise coprimality is enough, which is all the
    counting identities actually require.
    """
    ms = tuple(int(m) for m in moduli)
    if not ms:
        raise EmptyModuliError("at least one modulus is required")
    for m in ms:
        if m < 2:
            raise ModulusTooSmallError(f"modulus {m} is smaller than 2")
        if m > MAX_MODULUS:
            raise ModulusTooLargeError(f"modulus {m} does not fit in 64 bits")
    seen: set[int] = set()
    for m in ms:
        if m in seen:
            raise DuplicateModulusError(f"modulus {m} appears more than once")
        seen.add(m)
    if coprime_mode:
        for i in range(len(ms)):
            for j in range(i + 1, len(ms)):
                if math.gcd(ms[i], ms[j]) != 1:
                    raise NotCoprimeError(
                        f"moduli {ms[i]} and {ms[j]} share a common factor"
                    )
    else:
        for m in ms:
            if not is_prime(m):
                raise NotPrimeError(f"modulus {m} is not prime")
    return ModulusSystem(moduli=ms, product=math.prod(ms), coprime_mode=coprime_mode)


def assign_residues(
    system: ModulusSystem, residues: Iterable[int]
) -> ResidueAssignment:
    """Build an assignment for ``system``, reducing each residue mod its modulus."""
    rs = tuple(int(r) for r in residues)
    if len(rs) != system.k:
        raise ValidationError(
            f"expected {system.k} residues, got {len(rs)}"
        )
    return ResidueAssignment(tuple(r % p for r, p in zip(rs, system.moduli)))


def gamma(system: ModulusSystem, assignment: ResidueAssignment, n: int) -> int:
    """Number of chosen residue classes containing n, for n in [1, product]."""
    if not 1 <= n <= system.product:
        raise OutOfRangeError(f"{n} lies outside [1, {system.product}]")
    if len(assignment.residues) != system.k:
        raise ValidationError(
            f"assignment has {len(assignment.residues)} residues for {system.k} moduli"
        )
    return sum(
        1 for p, r in zip(system.moduli, assignment.residues) if n % p == r % p
    )
