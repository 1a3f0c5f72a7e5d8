"""Small integer helpers: primality, factoring, sieving, exact roots, CRT.

Everything here is trial division or a plain sieve. Inputs stay below
2**32 at the scales this package works at.
"""
from math import gcd, isqrt


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_divisors(n: int) -> list[int]:
    return sorted(factorize(abs(n))) if n not in (0, 1, -1) else []


def prime_power(q: int):
    """Return (p, k) with q == p**k, or None if q is not a prime power."""
    if q < 2:
        return None
    fac = factorize(q)
    if len(fac) != 1:
        return None
    (p, k), = fac.items()
    return p, k


def primes_up_to(bound: int) -> list[int]:
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytes(len(range(i * i, bound + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def iroot(n: int, k: int) -> int:
    """Largest integer r >= 0 with r**k <= n."""
    if n < 0 or k < 1:
        raise ValueError(f"iroot({n}, {k}) undefined")
    if n < 2 or k == 1:
        return n
    # integer Newton from above decreases monotonically to the floor root
    r = 1 << -(-n.bit_length() // k)
    while True:
        s = ((k - 1) * r + n // r ** (k - 1)) // k
        if s >= r:
            return r
        r = s


def crt(residues, moduli) -> tuple[int, int]:
    """Combine x = r_i (mod m_i) for pairwise coprime m_i into (x, M)."""
    x, M = 0, 1
    for r, m in zip(residues, moduli):
        if gcd(M, m) != 1:
            raise ValueError(f"moduli not coprime: {M}, {m}")
        t = ((r - x) * pow(M, -1, m)) % m
        x += M * t
        M *= m
    return x % M, M
