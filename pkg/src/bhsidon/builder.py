"""phi-Sidon systems of multiplicity at most h! from discrete logs in GF(q**h).

With theta generating GF(q**h)* and gcd(q**h - 1, c_i) = 1, each c_i is
invertible mod N = q**h - 1, so a_{i,j} = c_i^{-1} * dlog(theta - lam_j)
satisfies theta**(c_i * a_{i,j}) = theta - lam_j. Every system built here
is re-verified by exhaustive enumeration before it is returned.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial, gcd

from .admissibility import is_admissible
from .classical import SidonSet, bose_chowla_set
from .errors import HypothesisViolation, InvalidInput, VerificationFailed
from .ff_tower import DEFAULT_CEILING, FieldTower, dlog, make_tower
from .linear_forms import LinearForm, SidonSystem, counting_bound, system_profile
from .ntheory import iroot, is_prime, prime_power


@dataclass
class ConstructionCertificate:
    q: int
    p: int
    k: int
    h: int
    irr: tuple[int, ...]
    theta: int
    coeffs: tuple[int, ...]
    inverses: tuple[int, ...]
    base_logs: tuple[int, ...]  # dlog(theta - lam_j), j in subfield order
    exponents: tuple[tuple[int, ...], ...]  # a_{i,j}
    verified_multiplicity: int
    experimental: bool = False

    @property
    def N(self) -> int:
        return self.q ** self.h - 1

    def to_json(self) -> dict:
        return {
            "q": self.q, "tower": {"p": self.p, "k": self.k, "h": self.h,
                                   "irr": list(self.irr), "theta": self.theta},
            "N": self.N, "phi": list(self.coeffs),
            "inverses": list(self.inverses), "base_logs": list(self.base_logs),
            "exponents": [list(row) for row in self.exponents],
            "verified_multiplicity": self.verified_multiplicity,
            "multiplicity_bound": factorial(self.h),
            "experimental": self.experimental,
        }


def _tower_for(q: int, h: int, experimental: bool, ceiling: int) -> FieldTower:
    if is_prime(q):
        return make_tower(q, 1, h, ceiling)
    pk = prime_power(q)
    if pk is None:
        raise InvalidInput(f"q = {q} is not a prime power")
    if not experimental:
        raise InvalidInput(f"q = {q} is a prime power, not a prime; "
                           "pass experimental=True to try it anyway")
    return make_tower(pk[0], pk[1], h, ceiling)


def build_system(phi: LinearForm, q: int, *, experimental: bool = False,
                 ceiling: int = DEFAULT_CEILING) -> tuple[SidonSystem, ConstructionCertificate]:
    h = phi.h
    N = q ** h - 1
    for i, c in enumerate(phi.coeffs):
        if gcd(N, c) != 1:
            raise HypothesisViolation(
                f"gcd(q^h - 1, c_{i + 1}) = gcd({N}, {c}) = {gcd(N, c)} != 1")
    tower = _tower_for(q, h, experimental, ceiling)
    base = [dlog(tower, tower.sub(tower.theta, lam)) for lam in tower.subfield]
    inverses = tuple(pow(c % N, -1, N) for c in phi.coeffs)
    rows = []
    for inv in inverses:
        row = tuple(inv * d % N for d in base)
        if 0 in row:
            raise VerificationFailed("zero exponent: theta would lie in the subfield")
        rows.append(row)
    system = SidonSystem(tuple(rows), factorial(h))
    mult = system_profile(phi, system).max_multiplicity
    if mult > factorial(h) and not experimental:
        raise VerificationFailed(f"constructed system has multiplicity {mult} > {h}!")
    cert = ConstructionCertificate(
        q=q, p=tower.p, k=tower.k, h=h, irr=tower.irr, theta=tower.encode(tower.theta),
        coeffs=phi.coeffs, inverses=inverses, base_logs=tuple(base),
        exponents=tuple(rows), verified_multiplicity=mult, experimental=experimental)
    return system, cert


def recheck_certificate(cert: ConstructionCertificate) -> bool:
    """Recompute theta**(c_i a_ij) == theta - lam_j from the stored tower data."""
    tower = FieldTower(cert.p, cert.k, cert.h, cert.irr, theta=cert.theta)
    lams = tower.subfield
    for c, row in zip(cert.coeffs, cert.exponents):
        for a, lam in zip(row, lams):
            if tower.pow(tower.theta, c * a) != tower.sub(tower.theta, lam):
                return False
    return True


@dataclass
class LowerBoundWitness:
    n: int
    q: int
    system: SidonSystem | SidonSet
    certificate: ConstructionCertificate | None = None

    def ratio(self, h: int) -> float:
        return self.q / self.n ** (1.0 / h)


def lower_bound_witness(phi: LinearForm, n: int, g: int | None = None, *,
                        ceiling: int = DEFAULT_CEILING) -> LowerBoundWitness | None:
    """Largest admissible prime q with q**h - 2 <= n, with its built system.

    The system lies in [1, q**h - 2] and so certifies F_{phi,g}(n) >= q.
    """
    h = phi.h
    g = factorial(h) if g is None else g
    for q in range(iroot(n + 2, h), 1, -1):
        if is_prime(q) and is_admissible(phi, q):
            system, cert = build_system(phi, q, ceiling=ceiling)
            if cert.verified_multiplicity > g:
                raise VerificationFailed(
                    f"witness for q={q} has multiplicity {cert.verified_multiplicity} > g={g}")
            return LowerBoundWitness(n, q, system, cert)
    return None


def classical_lower_bound(h: int, n: int, *, ceiling: int = DEFAULT_CEILING) -> LowerBoundWitness | None:
    """Largest prime power q with q**h - 2 <= n and its Bose-Chowla set."""
    if h < 2:
        raise InvalidInput(f"h must be >= 2, got {h}")
    for q in range(iroot(n + 2, h), 1, -1):
        pk = prime_power(q)
        if pk:
            A = bose_chowla_set(make_tower(pk[0], pk[1], h, ceiling))
            return LowerBoundWitness(n, q, A)
    return None


@dataclass
class DensityRow:
    n: int
    q: int | None
    ratio: float | None

    def to_json(self) -> dict:
        return {"n": self.n, "q": self.q, "ratio": self.ratio}


def density_table(phi: LinearForm, n_values, g: int | None = None, *,
                  ceiling: int = DEFAULT_CEILING) -> list[DensityRow]:
    """Per n, the construction's q and q / n**(1/h). Finite-n values only."""
    rows = []
    for n in n_values:
        wit = lower_bound_witness(phi, n, g, ceiling=ceiling)
        if wit is None:
            rows.append(DensityRow(n, None, None))
        else:
            rows.append(DensityRow(n, wit.q, wit.ratio(phi.h)))
    return rows


def verify_built_system(phi: LinearForm, system: SidonSystem, q: int) -> list:
    """Multiplicity and counting-bound checks for a system inside [1, q**h - 2]."""
    return counting_bound(phi, system, factorial(phi.h), q ** phi.h - 2)
