"""Representation functions of h-fold sums, B_h[g] predicates, Bose-Chowla sets."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from math import comb, factorial

from .errors import CeilingExceeded, InvalidInput, VerificationFailed
from .ff_tower import FieldTower, dlog

ENUMERATION_CEILING = 10 ** 7


@dataclass(frozen=True)
class SidonSet:
    """Strictly increasing positive integers."""

    elements: tuple[int, ...]

    def __post_init__(self):
        els = tuple(self.elements)
        if any(b <= a for a, b in zip(els, els[1:])):
            raise InvalidInput(f"elements must be strictly increasing: {els}")
        if els and els[0] < 1:
            raise InvalidInput(f"elements must be positive: {els}")
        object.__setattr__(self, "elements", els)

    @classmethod
    def of(cls, values) -> "SidonSet":
        values = list(values)
        if len(set(values)) != len(values):
            raise InvalidInput(f"duplicate elements in {values}")
        return cls(tuple(sorted(values)))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def to_json(self) -> list[int]:
        return list(self.elements)


@dataclass
class RepProfile:
    """Sparse representation counts; a missing key means count 0."""

    counts: dict[int, int]
    mode: str  # "ordered" or "orbit"
    h: int
    modulus: int | None = None

    def __getitem__(self, w: int) -> int:
        if self.modulus is not None:
            w %= self.modulus
        return self.counts.get(w, 0)

    def total(self) -> int:
        return sum(self.counts.values())

    def max_count(self) -> int:
        return max(self.counts.values(), default=0)

    def to_json(self) -> dict:
        return {"mode": self.mode, "h": self.h, "modulus": self.modulus,
                "counts": {str(w): c for w, c in sorted(self.counts.items())}}


def _elements(A) -> tuple[int, ...]:
    els = tuple(A)
    if len(set(els)) != len(els):
        raise InvalidInput(f"duplicate elements in {els}")
    return tuple(sorted(els))


def _check_h(h: int):
    if h < 1:
        raise InvalidInput(f"h must be >= 1, got {h}")


def _sum_counter(els, r: int) -> Counter:
    """Ordered r-tuple sums with multiplicity."""
    out = Counter({0: 1})
    for _ in range(r):
        nxt = Counter()
        for s, c in out.items():
            for a in els:
                nxt[s + a] += c
        out = nxt
    return out


def rep_ordered(A, h: int, *, ceiling: int = ENUMERATION_CEILING,
                split: bool = True) -> RepProfile:
    """R_{A,h}: number of ordered h-tuples from A summing to each w.

    Direct enumeration up to ``ceiling`` tuples; above it the tuple is split
    into halves whose partial-sum histograms are convolved.
    """
    _check_h(h)
    els = _elements(A)
    if len(els) ** h <= ceiling:
        counts = Counter(sum(t) for t in product(els, repeat=h))
    elif split:
        left = _sum_counter(els, (h + 1) // 2)
        right = _sum_counter(els, h // 2)
        counts = Counter()
        for s, c in left.items():
            for t, d in right.items():
                counts[s + t] += c * d
    else:
        raise CeilingExceeded(f"{len(els)}^{h} ordered tuples exceed {ceiling}")
    return RepProfile(dict(counts), "ordered", h)


def _orbit_counts_dp(els, h, modulus):
    # levels[j][s]: number of size-j multisets with sum s over elements seen so far
    levels = [Counter() for _ in range(h + 1)]
    levels[0][0] = 1
    for a in els:
        for j in range(1, h + 1):  # ascending j lets a repeat
            for s, c in list(levels[j - 1].items()):
                key = s + a if modulus is None else (s + a) % modulus
                levels[j][key] += c
    return levels[h]


def rep_orbit(A, h: int, modulus: int | None = None, *,
              ceiling: int = ENUMERATION_CEILING, split: bool = True) -> RepProfile:
    """r_{A,h}: number of multisets {a_1..a_h} from A summing to w (or to w mod m).

    Nondecreasing index tuples are enumerated directly; above ``ceiling`` a
    size-indexed knapsack recurrence produces the same counts.
    """
    _check_h(h)
    if modulus is not None and modulus < 2:
        raise InvalidInput(f"modulus must be >= 2, got {modulus}")
    els = _elements(A)
    if comb(len(els) + h - 1, h) <= ceiling:
        counts = Counter()
        for t in combinations_with_replacement(els, h):
            s = sum(t)
            counts[s if modulus is None else s % modulus] += 1
    elif split:
        counts = _orbit_counts_dp(els, h, modulus)
    else:
        raise CeilingExceeded(f"multiset count exceeds {ceiling}")
    return RepProfile(dict(counts), "orbit", h, modulus)


def representations(A, h: int, w: int, modulus: int | None = None) -> list[tuple[int, ...]]:
    """All nondecreasing h-tuples from A whose sum is w (mod m when given)."""
    els = _elements(A)
    out = []

    def walk(start, left, partial, acc):
        if left == 0:
            if (partial == w) if modulus is None else ((partial - w) % modulus == 0):
                out.append(tuple(acc))
            return
        for i in range(start, len(els)):
            a = els[i]
            if modulus is None and partial + a * left > w:
                break  # later picks are all >= a
            acc.append(a)
            walk(i, left - 1, partial + a, acc)
            acc.pop()

    walk(0, h, 0, [])
    return out


@dataclass
class BhgResult:
    ok: bool
    max_count: int
    witness_value: int | None = None
    witness_multisets: list[tuple[int, ...]] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def is_bhg(A, h: int, g: int = 1, modulus: int | None = None) -> BhgResult:
    """Whether every (modular) h-fold multiset sum occurs at most g times."""
    if g < 1:
        raise InvalidInput(f"g must be >= 1, got {g}")
    prof = rep_orbit(A, h, modulus)
    if not prof.counts:
        return BhgResult(True, 0)
    top = prof.max_count()
    w = min(v for v, c in prof.counts.items() if c == top)
    return BhgResult(top <= g, top, w, representations(A, h, w, modulus))


def is_sidon(A, h: int = 2, modulus: int | None = None) -> bool:
    return is_bhg(A, h, 1, modulus).ok


@dataclass
class Implication:
    premise: bool
    conclusion: bool

    @property
    def holds(self) -> bool:
        return (not self.premise) or self.conclusion

    def __bool__(self):
        return self.holds


def check_mod_implies_plain(A, h: int, m: int) -> Implication:
    """Evaluate 'B_h modulo m' => 'B_h' on one instance."""
    return Implication(is_sidon(A, h, m), is_sidon(A, h))


def bose_chowla_set(tower: FieldTower, *, verify: bool = True) -> SidonSet:
    """{dlog(theta - lam) : lam in GF(q)}, a B_h set modulo q**h - 1."""
    theta = tower.theta
    logs = [dlog(tower, tower.sub(theta, lam)) for lam in tower.subfield]
    if 0 in logs:
        raise VerificationFailed("theta lies in the subfield")
    A = SidonSet.of(logs)
    if verify:
        res = is_bhg(A, tower.h, 1, tower.N)
        if not res:
            raise VerificationFailed(
                f"Bose-Chowla set {A.elements} has {res.max_count} multisets "
                f"at residue {res.witness_value} mod {tower.N}")
    return A


def ordered_le_orbit_bound(A, h: int) -> bool:
    """R_{A,h}(w) <= h! * r_{A,h}(w) at every w."""
    R = rep_ordered(A, h)
    r = rep_orbit(A, h)
    f = factorial(h)
    return set(R.counts) == set(r.counts) and all(R[w] <= f * r[w] for w in R.counts)
