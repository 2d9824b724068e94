"""Solving the norm equation N(z) = n over the Eisenstein integers.

For a prime p the equation is solvable iff p = 3 or p = 1 mod 3; the
solution comes from a square root of -3 mod p (Tonelli-Shanks) followed
by a gcd in Z[w].  Composite right-hand sides are handled when they are
semi-smooth: a product of a policy-smooth integer and at most one larger
prime.  Non-semi-smooth inputs yield "absent", which callers treat as
"give up on this candidate".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import gmpy2
import numpy as np

from .eisenstein import EisensteinInt, canonical_associate, gcd as egcd, norm

MPZ = gmpy2.mpz


class UnsolvableError(ValueError):
    """The norm equation provably has no solution for this input."""


@dataclass(frozen=True)
class SmoothnessPolicy:
    """Bounds for the semi-smoothness probe used by the factoring step."""

    trial_division_bound: int = 1 << 20
    primality_test_rounds: int = 40

    def __post_init__(self):
        if self.trial_division_bound < 2:
            raise ValueError("trial_division_bound must be >= 2")


DEFAULT_POLICY = SmoothnessPolicy()


@dataclass(frozen=True)
class NormEquationSolution:
    z: EisensteinInt
    n: int

    def __post_init__(self):
        if norm(self.z) != self.n:
            raise ValueError(f"norm({self.z}) != {self.n}")


@dataclass(frozen=True)
class SemismoothFactorization:
    """n = m**2 * prod(p for p, _ in primes); the listed primes are exactly
    the odd-multiplicity ones, paired with their full multiplicity in n."""

    m: int
    primes: tuple = field(default_factory=tuple)


# ---- shared small-prime table ----------------------------------------------

_PRIME_CACHE: dict = {}


def small_primes(bound: int) -> list:
    """All primes <= bound, sieved once per bound and shared read-only."""
    table = _PRIME_CACHE.get(bound)
    if table is None:
        sieve = np.ones(bound + 1, dtype=bool)
        sieve[:2] = False
        for p in range(2, int(bound**0.5) + 1):
            if sieve[p]:
                sieve[p * p :: p] = False
        table = [int(p) for p in np.nonzero(sieve)[0]]
        _PRIME_CACHE[bound] = table
    return table


def is_probable_prime(n: int, rounds: int = 40) -> bool:
    return bool(gmpy2.is_prime(MPZ(n), rounds))


# ---- Tonelli-Shanks ---------------------------------------------------------


def sqrt_minus3_mod_p(p: int) -> int:
    """A square root of -3 modulo an odd prime p = 1 mod 3 (p > 3).

    Tonelli-Shanks; the p = 3 mod 4 shortcut covers half the inputs."""
    if p <= 3 or p % 3 != 1:
        raise ValueError(f"-3 is not a quadratic residue mod {p}")
    if not is_probable_prime(p):
        raise ValueError(f"{p} is not prime")
    a = (-3) % p
    if p % 4 == 3:
        m = pow(a, (p + 1) // 4, p)
    else:
        m = _tonelli_shanks(a, p)
    if m * m % p != (p - 3) % p:
        raise ValueError(f"{p} is not prime (square root verification failed)")
    return m


def _tonelli_shanks(a: int, p: int) -> int:
    # p odd prime, a a quadratic residue mod p
    s, e = p - 1, 0
    while s % 2 == 0:
        s //= 2
        e += 1
    g = 2
    while pow(g, (p - 1) // 2, p) != p - 1:
        g += 1
    x = pow(a, (s + 1) // 2, p)
    b = pow(a, s, p)
    g = pow(g, s, p)
    r = e
    while b != 1:
        t, m = b, 0
        while t != 1:
            t = t * t % p
            m += 1
        gs = pow(g, 1 << (r - m - 1), p)
        g = gs * gs % p
        x = x * gs % p
        b = b * g % p
        r = m
    return x


# ---- prime right-hand sides -------------------------------------------------


def solve_prime(p: int) -> NormEquationSolution:
    """Solve N(z) = p for p = 3 or a prime p = 1 mod 3.

    The full solution set is the 12 associates/conjugates of the returned z."""
    if p == 3:
        return NormEquationSolution(canonical_associate(EisensteinInt(1, 2)), 3)
    if p % 3 == 2 or p == 2:
        raise UnsolvableError(f"N(z) = {p} has no solution (p = 2 mod 3)")
    m = sqrt_minus3_mod_p(p)
    # gcd(m + 1 + 2w, p) picks out one of the two primes above p
    z = egcd(EisensteinInt(m + 1, 2), EisensteinInt(p, 0))
    if norm(z) != p:
        raise ValueError(f"gcd did not produce a norm-{p} element; {p} composite?")
    return NormEquationSolution(z, p)


# ---- semi-smooth factoring --------------------------------------------------

# indices into the prime table at which the remaining cofactor gets a
# primality probe; cheap relative to scanning the rest of the table
_CHECKPOINTS = (32, 256, 2048, 16384, 49152)


def _factor_probe(n: int, policy: SmoothnessPolicy, stop_unsolvable: bool):
    """Trial-divide n by the policy's primes.

    Returns (factors, cofactor, verdict) where verdict is one of
    'factored'    -- cofactor is 1 or recorded as a single probable prime,
    'composite'   -- cofactor composite after the full scan (not semi-smooth),
    'unsolvable'  -- early exit: an odd-multiplicity prime = 2 mod 3 was found
                     (only when stop_unsolvable is set).
    """
    primes = small_primes(policy.trial_division_bound)
    rounds = policy.primality_test_rounds
    rem = MPZ(n)
    factors: dict = {}
    next_checkpoint = 0
    for i, p in enumerate(primes):
        if rem == 1:
            return factors, 1, "factored"
        if rem % p == 0:
            e = 0
            while rem % p == 0:
                rem //= p
                e += 1
            factors[p] = e
            if stop_unsolvable and e % 2 == 1 and p % 3 == 2:
                return factors, int(rem), "unsolvable"
            if p * p > rem:
                # anything left below p^2 is prime
                break
        elif p * p > rem:
            break
        if next_checkpoint < len(_CHECKPOINTS) and i >= _CHECKPOINTS[next_checkpoint]:
            next_checkpoint += 1
            if rem > 1 and gmpy2.is_prime(rem, rounds):
                factors[int(rem)] = factors.get(int(rem), 0) + 1
                return factors, 1, "factored"
    if rem == 1:
        return factors, 1, "factored"
    bound = policy.trial_division_bound
    if rem <= bound * bound or gmpy2.is_prime(rem, rounds):
        # below bound^2 the cofactor has no divisor <= bound left, so prime
        factors[int(rem)] = factors.get(int(rem), 0) + 1
        return factors, 1, "factored"
    return factors, int(rem), "composite"


def try_factor_semismooth(
    n: int, policy: SmoothnessPolicy = DEFAULT_POLICY
) -> Optional[SemismoothFactorization]:
    """Factor n as m^2 * (odd-multiplicity primes), or None if not semi-smooth."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return SemismoothFactorization(1)
    factors, _, verdict = _factor_probe(n, policy, stop_unsolvable=False)
    if verdict != "factored":
        return None
    m = 1
    odd = []
    for p in sorted(factors):
        e = factors[p]
        m *= p ** (e // 2)
        if e % 2 == 1:
            odd.append((p, e))
    return SemismoothFactorization(m, tuple(odd))


def _solvability_parts(n: int, policy: SmoothnessPolicy):
    """(m, odd_primes) when N(z) = n is easily solvable, else None."""
    factors, _, verdict = _factor_probe(n, policy, stop_unsolvable=True)
    if verdict != "factored":
        return None
    m = 1
    odd = []
    for p, e in factors.items():
        m *= p ** (e // 2)
        if e % 2 == 1:
            if p != 3 and p % 3 != 1:
                return None
            odd.append(p)
    return m, sorted(odd)


def solve(
    n: int, policy: SmoothnessPolicy = DEFAULT_POLICY
) -> Optional[NormEquationSolution]:
    """Solve N(z) = n, or None when n is not easily solvable under the policy.

    The result is re-verified against n, so a composite that slips through the
    probabilistic primality test can only turn into "absent", never into a
    wrong solution."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return NormEquationSolution(EisensteinInt(0, 0), 0)
    if n == 1:
        return NormEquationSolution(EisensteinInt(1, 0), 1)
    parts = _solvability_parts(n, policy)
    if parts is None:
        return None
    m, odd = parts
    z = EisensteinInt(m, 0)
    for p in odd:
        try:
            z = z * solve_prime(p).z
        except (UnsolvableError, ValueError):
            return None
    if norm(z) != n:
        return None
    return NormEquationSolution(z, n)


def is_easily_solvable(n: int, policy: SmoothnessPolicy = DEFAULT_POLICY) -> bool:
    """Whether solve() would succeed, without doing the Z[w] gcd work."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n <= 1:
        return True
    return _solvability_parts(n, policy) is not None
