"""Which primes q make gcd(q**h - 1, c_i) = 1 for every coefficient.

Two independent routes: a residue class u mod Q assembled by CRT from
per-prime witnesses, and a plain sieve with a gcd filter. cross_validate
checks the first against the second.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import HypothesisViolation, InvalidInput, VerificationFailed
from .linear_forms import LinearForm
from .ntheory import crt, is_prime, prime_divisors, primes_up_to


@dataclass(frozen=True)
class ExceptionalPrimeSet:
    h: int
    primes: tuple[int, ...]

    def __contains__(self, p):
        return p in self.primes


def exceptional_primes(h: int) -> ExceptionalPrimeSet:
    """Primes p with (p - 1) | h; every such p is at most h + 1."""
    if h < 2:
        raise InvalidInput(f"h must be >= 2, got {h}")
    primes = [d + 1 for d in range(1, h + 1) if h % d == 0 and is_prime(d + 1)]
    return ExceptionalPrimeSet(h, tuple(primes))


def lemma_witness(p: int, h: int) -> int | None:
    """Smallest u in [1, p-1] with u**h != 1 (mod p); None iff (p - 1) | h."""
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    for u in range(1, p):
        if pow(u, h, p) != 1:
            return u
    return None


@dataclass(frozen=True)
class AdmissibleProgression:
    u: int
    Q: int
    witnesses: dict[int, int] = field(default_factory=dict)

    def contains(self, q: int) -> bool:
        return self.Q == 1 or q % self.Q == self.u

    def to_json(self) -> dict:
        return {"u": self.u, "Q": self.Q,
                "witnesses": {str(p): w for p, w in sorted(self.witnesses.items())}}


def admissible_progression(phi: LinearForm) -> AdmissibleProgression:
    """Residue class u mod Q all of whose primes are admissible for phi.

    Q is the product of the primes dividing some coefficient. (0, 1) stands
    for "no congruence constraint" when every |c_i| = 1.
    """
    bad = exceptional_primes(phi.h)
    for p in bad.primes:
        for c in phi.coeffs:
            if c % p == 0:
                raise HypothesisViolation(
                    f"prime {p} has (p-1) | h={phi.h} and divides coefficient {c}")
    source = sorted({p for c in phi.coeffs for p in prime_divisors(c)})
    if not source:
        return AdmissibleProgression(0, 1, {})
    witnesses = {p: lemma_witness(p, phi.h) for p in source}
    u, Q = crt([witnesses[p] for p in source], source)
    return AdmissibleProgression(u, Q, witnesses)


def is_admissible(phi: LinearForm, q: int) -> bool:
    n = q ** phi.h - 1
    return all(gcd(n, c) == 1 for c in phi.coeffs)


def admissible_primes(phi: LinearForm, bound: int) -> list[int]:
    return [q for q in primes_up_to(bound) if is_admissible(phi, q)]


@dataclass
class CrossValidation:
    progression: AdmissibleProgression
    bound: int
    progression_primes: list[int]
    direct_primes: list[int]
    violations: list[int]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"bound": self.bound, "progression": self.progression.to_json(),
                "progression_primes": self.progression_primes,
                "direct_primes": self.direct_primes,
                "violations": self.violations, "ok": self.ok}


def cross_validate(phi: LinearForm, bound: int, *, strict: bool = True) -> CrossValidation:
    """Primes <= bound in the CRT class must all pass the direct gcd filter."""
    prog = admissible_progression(phi)
    direct = admissible_primes(phi, bound)
    direct_set = set(direct)
    in_prog = [q for q in primes_up_to(bound) if prog.contains(q)]
    result = CrossValidation(prog, bound, in_prog, direct,
                             [q for q in in_prog if q not in direct_set])
    if strict and not result.ok:
        raise VerificationFailed(
            f"progression {prog.u} mod {prog.Q} contains inadmissible primes {result.violations}")
    return result
