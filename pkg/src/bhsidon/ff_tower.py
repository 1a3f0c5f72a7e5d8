"""Finite fields GF(p^d) as GF(p)[x]/(f), with the tower GF(p) < GF(q) < GF(q^h).

Elements are fixed-length coefficient tuples, constant term first. The
integer encoding of an element is sum(c_i * p**i); it orders candidates in
every deterministic search below (irreducible polynomial, generator,
subfield listing).

Only one arithmetic layer exists. The intermediate field GF(q), q = p**k,
is recovered inside GF(p^(k*h)) as the fixed points of z -> z**q.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import isqrt

import numpy as np

from .errors import CeilingExceeded, InvalidInput, VerificationFailed
from .ntheory import factorize, is_prime

DEFAULT_CEILING = 2 ** 24
TABLE_THRESHOLD = 2 ** 20


# --- polynomials over GF(p), trimmed lists, constant term first -------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
           for i in range(n)]
    return _trim(out)


def _poly_mod(a, f, p):
    a = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % p
    return _trim(a[:df] if len(a) > df else a)


def _poly_mulmod(a, b, f, p):
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    return _poly_mod([c % p for c in prod], f, p)


def _poly_powmod(a, e, f, p):
    result = [1]
    base = _poly_mod(a, f, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _x_pow_p_iter(f, p, times):
    """x**(p**times) mod f, by repeated p-th powering."""
    r = _poly_mod([0, 1], f, p)
    for _ in range(times):
        r = _poly_powmod(r, p, f, p)
    return r


def is_irreducible(f, p: int) -> bool:
    """Rabin's test for a monic f over GF(p), coefficients constant term first."""
    f = _trim(list(f))
    d = len(f) - 1
    if d < 1:
        return False
    if _poly_mod(_poly_sub(_x_pow_p_iter(f, p, d), [0, 1], p), f, p):
        return False
    for r in factorize(d):
        g = _poly_gcd(f, _poly_sub(_x_pow_p_iter(f, p, d // r), [0, 1], p), p)
        if len(g) != 1:
            return False
    return True


def find_irreducible(p: int, d: int) -> tuple[int, ...]:
    """Monic irreducible of degree d over GF(p) with the smallest encoding.

    The encoding is sum(c_i p**i) over the non-leading coefficients, so the
    search walks the p**d lower-coefficient vectors in increasing order.
    """
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    if d < 1:
        raise InvalidInput(f"degree must be >= 1, got {d}")
    for enc in range(p ** d):
        low = [(enc // p ** i) % p for i in range(d)]
        if is_irreducible(low + [1], p):
            return tuple(low + [1])
    raise AssertionError("no irreducible polynomial found")  # unreachable


# --- field elements and arithmetic ------------------------------------------

@dataclass(frozen=True)
class FieldElement:
    coeffs: tuple[int, ...]

    def is_zero(self) -> bool:
        return not any(self.coeffs)


class GF:
    """The field GF(p)[x]/(irr) for a monic irreducible irr of degree d."""

    def __init__(self, p: int, irr):
        self.p = p
        self.irr = tuple(irr)
        self.d = len(self.irr) - 1
        self.size = p ** self.d
        self.N = self.size - 1
        self.zero = FieldElement((0,) * self.d)
        self.one = self.element(1)

    def element(self, value) -> FieldElement:
        """Build an element from an integer encoding or a coefficient sequence."""
        if isinstance(value, FieldElement):
            value = value.coeffs
        if isinstance(value, int):
            if not 0 <= value < self.size:
                raise InvalidInput(f"encoding {value} outside [0, {self.size})")
            return FieldElement(tuple((value // self.p ** i) % self.p
                                      for i in range(self.d)))
        coeffs = [c % self.p for c in value]
        if len(coeffs) > self.d:
            coeffs = _poly_mod(coeffs, list(self.irr), self.p)
        return FieldElement(tuple(coeffs) + (0,) * (self.d - len(coeffs)))

    def encode(self, z: FieldElement) -> int:
        out = 0
        for c in reversed(z.coeffs):
            out = out * self.p + c
        return out

    def elements(self):
        for enc in range(self.size):
            yield self.element(enc)

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        p = self.p
        return FieldElement(tuple((x + y) % p for x, y in zip(a.coeffs, b.coeffs)))

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        p = self.p
        return FieldElement(tuple((x - y) % p for x, y in zip(a.coeffs, b.coeffs)))

    def neg(self, a: FieldElement) -> FieldElement:
        return FieldElement(tuple(-x % self.p for x in a.coeffs))

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        p, d, irr = self.p, self.d, self.irr
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    prod[i + j] += x * y
        for i in range(2 * d - 2, d - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(d):
                    prod[i - d + j] -= c * irr[j]
        return FieldElement(tuple(c % p for c in prod[:d]))

    def pow(self, a: FieldElement, e: int) -> FieldElement:
        if a.is_zero():
            if e < 0:
                raise ZeroDivisionError("zero has no inverse")
            return self.one if e == 0 else self.zero
        e %= self.N
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: FieldElement) -> FieldElement:
        if a.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        return self.pow(a, self.N - 1)

    def order(self, a: FieldElement) -> int:
        """Multiplicative order of a nonzero element."""
        if a.is_zero():
            raise ZeroDivisionError("zero has no multiplicative order")
        n = self.N
        for r, e in factorize(self.N).items():
            for _ in range(e):
                if self.pow(a, n // r) == self.one:
                    n //= r
                else:
                    break
        return n

    def is_generator(self, a: FieldElement) -> bool:
        if a.is_zero():
            return False
        return all(self.pow(a, self.N // r) != self.one for r in factorize(self.N))

    def mul_matrix(self, z: FieldElement) -> np.ndarray:
        """d x d integer matrix of y -> z*y acting on coefficient columns."""
        cols = []
        basis = self.one
        x = self.element([0, 1])
        for _ in range(self.d):
            cols.append(self.mul(z, basis).coeffs)
            basis = self.mul(basis, x)
        return np.array(cols, dtype=np.int64).T


def find_generator(field: GF) -> FieldElement:
    """First element in encoding order whose multiplicative order is N."""
    for enc in range(1, field.size):
        z = field.element(enc)
        if field.is_generator(z):
            return z
    raise AssertionError("multiplicative group has no generator")  # unreachable


# --- the tower ---------------------------------------------------------------

class FieldTower(GF):
    """GF(p) < GF(q) < GF(q**h) with q = p**k and a fixed generator theta.

    Treat instances as read-only; make_tower caches and shares them.
    """

    def __init__(self, p: int, k: int, h: int, irr, theta=None,
                 table_threshold: int = TABLE_THRESHOLD):
        super().__init__(p, irr)
        if self.d != k * h:
            raise InvalidInput(f"irreducible degree {self.d} != k*h = {k * h}")
        self.k = k
        self.h = h
        self.q = p ** k
        self.table_threshold = table_threshold
        self.theta = find_generator(self) if theta is None else self.element(theta)

    def __repr__(self):
        return (f"FieldTower(p={self.p}, k={self.k}, h={self.h}, irr={self.irr}, "
                f"theta={self.encode(self.theta)})")

    def __eq__(self, other):
        if not isinstance(other, FieldTower):
            return NotImplemented
        return self.describe() == other.describe()

    def __hash__(self):
        return hash((self.p, self.k, self.h, self.irr, self.theta))

    def describe(self) -> dict:
        return {"p": self.p, "k": self.k, "h": self.h, "q": self.q, "N": self.N,
                "irr": list(self.irr), "theta": self.encode(self.theta)}

    @cached_property
    def subfield(self) -> tuple[FieldElement, ...]:
        return subfield_elements(self)

    @cached_property
    def log_table(self) -> np.ndarray:
        """Array indexed by encoding; entry is the discrete log, -1 at zero."""
        return _build_log_table(self)

    def theta_pow(self, e: int) -> FieldElement:
        return self.pow(self.theta, e)


def _build_log_table(tower: FieldTower) -> np.ndarray:
    p, d, N = tower.p, tower.d, tower.N
    block = min(1024, N)
    rows = []
    z = tower.one
    for _ in range(block):
        rows.append(z.coeffs)
        z = tower.mul(z, tower.theta)
    first = np.array(rows, dtype=np.int64)
    step = tower.mul_matrix(tower.theta_pow(block)).T
    blocks = [first]
    have = block
    cur = first
    while have < N:
        cur = (cur @ step) % p
        blocks.append(cur)
        have += block
    powers = np.concatenate(blocks)[:N]
    weights = np.array([p ** i for i in range(d)], dtype=np.int64)
    encodings = powers @ weights
    table = np.full(tower.size, -1, dtype=np.int64)
    table[encodings] = np.arange(N, dtype=np.int64)
    if int((table >= 0).sum()) != N:
        raise VerificationFailed("theta powers repeat; theta is not a generator")
    return table


@lru_cache(maxsize=64)
def make_tower(p: int, k: int = 1, h: int = 2, ceiling: int = DEFAULT_CEILING,
               table_threshold: int = TABLE_THRESHOLD) -> FieldTower:
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidInput(f"p = {p} is not prime")
    if k < 1:
        raise InvalidInput(f"k must be >= 1, got {k}")
    if h < 2:
        raise InvalidInput(f"h must be >= 2, got {h}")
    if p ** (k * h) > ceiling:
        raise CeilingExceeded(f"field size {p}^{k * h} exceeds ceiling {ceiling}")
    irr = find_irreducible(p, k * h)
    return FieldTower(p, k, h, irr, table_threshold=table_threshold)


def subfield_elements(tower: FieldTower, method: str = "auto") -> tuple[FieldElement, ...]:
    """The q elements with z**q == z, sorted by encoding.

    "scan" tests every field element; "power" lists 0 and the powers of
    theta**((N)/(q-1)), which are the same set. "auto" scans small fields.
    """
    q = tower.q
    if method == "auto":
        method = "scan" if tower.size <= 2 ** 16 else "power"
    if method == "scan":
        found = [z for z in tower.elements() if tower.pow(z, q) == z]
    elif method == "power":
        gen = tower.theta_pow(tower.N // (q - 1)) if q > 1 else tower.one
        found = [tower.zero]
        z = tower.one
        for _ in range(q - 1):
            found.append(z)
            z = tower.mul(z, gen)
    else:
        raise InvalidInput(f"unknown subfield method {method!r}")
    found.sort(key=tower.encode)
    if len(found) != q:
        raise VerificationFailed(f"subfield has {len(found)} elements, expected {q}")
    return tuple(found)


def dlog(tower: FieldTower, z: FieldElement, method: str = "auto") -> int:
    """Exponent e in [0, N-1] with theta**e == z."""
    if z.is_zero():
        raise InvalidInput("zero has no discrete logarithm")
    if method == "auto":
        method = "table" if tower.N <= tower.table_threshold else "bsgs"
    if method == "table":
        return int(tower.log_table[tower.encode(z)])
    if method == "bsgs":
        return _dlog_bsgs(tower, z)
    if method == "naive":
        w = tower.one
        for e in range(tower.N):
            if w == z:
                return e
            w = tower.mul(w, tower.theta)
        raise VerificationFailed("element not reached by powers of theta")
    raise InvalidInput(f"unknown dlog method {method!r}")


def _dlog_bsgs(tower: FieldTower, z: FieldElement) -> int:
    m = isqrt(tower.N - 1) + 1
    baby = {}
    w = tower.one
    for j in range(m):
        baby.setdefault(tower.encode(w), j)
        w = tower.mul(w, tower.theta)
    giant = tower.inv(w)  # theta**(-m)
    gamma = z
    for i in range(m + 1):
        j = baby.get(tower.encode(gamma))
        if j is not None:
            return (i * m + j) % tower.N
        gamma = tower.mul(gamma, giant)
    raise VerificationFailed("baby-step giant-step found no logarithm")
