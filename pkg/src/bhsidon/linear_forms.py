"""Linear forms c_1 x_1 + ... + c_h x_h and the systems (A_1, ..., A_h) they act on."""
from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from math import prod

from .errors import CeilingExceeded, InvalidInput

ENUMERATION_CEILING = 10 ** 7


@dataclass(frozen=True)
class LinearForm:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if len(coeffs) < 2:
            raise InvalidInput(f"a linear form needs h >= 2 coefficients, got {coeffs}")
        if 0 in coeffs:
            raise InvalidInput(f"coefficients must be nonzero: {coeffs}")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def h(self) -> int:
        return len(self.coeffs)

    @property
    def C(self) -> int:
        return sum(abs(c) for c in self.coeffs)

    def is_unit(self) -> bool:
        return all(c == 1 for c in self.coeffs)

    def __call__(self, values) -> int:
        return evaluate(self, values)


def evaluate(phi: LinearForm, values) -> int:
    values = tuple(values)
    if len(values) != phi.h:
        raise InvalidInput(f"expected {phi.h} values, got {len(values)}")
    return sum(c * a for c, a in zip(phi.coeffs, values))


@dataclass(frozen=True)
class SidonSystem:
    """An h-tuple of nonempty finite integer sets, each stored sorted."""

    sets: tuple[tuple[int, ...], ...]
    g: int | None = None

    def __post_init__(self):
        norm = []
        for i, A in enumerate(self.sets):
            A = list(A)
            if not A:
                raise InvalidInput(f"set {i} is empty")
            if len(set(A)) != len(A):
                raise InvalidInput(f"set {i} has duplicate elements: {A}")
            norm.append(tuple(sorted(int(a) for a in A)))
        object.__setattr__(self, "sets", tuple(norm))

    @property
    def h(self) -> int:
        return len(self.sets)

    def sizes(self) -> list[int]:
        return [len(A) for A in self.sets]

    def to_json(self, phi: LinearForm | None = None) -> dict:
        out = {"sets": [list(A) for A in self.sets], "g": self.g}
        if phi is not None:
            out = {"phi": list(phi.coeffs), **out}
        return out


def system_from_json(data) -> tuple[LinearForm, SidonSystem]:
    """Parse {"phi": [...], "sets": [[...], ...], "g": int|null}."""
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    try:
        phi = LinearForm(tuple(data["phi"]))
        system = SidonSystem(tuple(tuple(A) for A in data["sets"]), data.get("g"))
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed system JSON: {exc}") from exc
    _check_arity(phi, system)
    return phi, system


def _check_arity(phi: LinearForm, system: SidonSystem):
    if phi.h != system.h:
        raise InvalidInput(f"form has {phi.h} coefficients but system has {system.h} sets")


@dataclass
class BoundCheck:
    name: str
    lhs: float
    rhs: float
    ok: bool

    def to_json(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs, "ok": self.ok}


@dataclass
class VerificationReport:
    profile: dict[int, int]
    max_multiplicity: int
    witness_value: int | None
    witness_tuples: list[tuple[int, ...]]
    product_size: int
    image_size: int
    bound_checks: list[BoundCheck] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "max_multiplicity": self.max_multiplicity,
            "witness": {"value": self.witness_value,
                        "tuples": [list(t) for t in self.witness_tuples]},
            "product_size": self.product_size,
            "image_size": self.image_size,
            "bound_checks": [b.to_json() for b in self.bound_checks],
        }

    def profile_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["value", "count"])
        for v, c in sorted(self.profile.items()):
            w.writerow([v, c])
        return buf.getvalue()


def _partial(coeffs, sets):
    """Histogram of sum(c_i * a_i) over the given coordinates."""
    hist = Counter({0: 1})
    for c, A in zip(coeffs, sets):
        nxt = Counter()
        for s, n in hist.items():
            for a in A:
                nxt[s + c * a] += n
        hist = nxt
    return hist


def _tuples_at(phi: LinearForm, system: SidonSystem, w: int) -> list[tuple[int, ...]]:
    """All tuples with phi == w, found by meeting two halves in the middle."""
    k = (phi.h + 1) // 2
    lc, rc = phi.coeffs[:k], phi.coeffs[k:]
    right: dict[int, list] = {}
    for t in product(*system.sets[k:]):
        right.setdefault(sum(c * a for c, a in zip(rc, t)), []).append(t)
    out = []
    for s in product(*system.sets[:k]):
        v = sum(c * a for c, a in zip(lc, s))
        for t in right.get(w - v, ()):
            out.append(s + t)
    out.sort()
    return out


def system_profile(phi: LinearForm, system: SidonSystem, *,
                   ceiling: int = ENUMERATION_CEILING, split: bool = True) -> VerificationReport:
    """Full representation function R(n) over the image phi(A_1 x ... x A_h)."""
    _check_arity(phi, system)
    total = prod(system.sizes())
    if total <= ceiling:
        counts = Counter(sum(c * a for c, a in zip(phi.coeffs, t))
                         for t in product(*system.sets))
    elif split:
        k = (phi.h + 1) // 2
        left = _partial(phi.coeffs[:k], system.sets[:k])
        right = _partial(phi.coeffs[k:], system.sets[k:])
        counts = Counter()
        for s, m in left.items():
            for t, n in right.items():
                counts[s + t] += m * n
    else:
        raise CeilingExceeded(f"{total} tuples exceed enumeration ceiling {ceiling}")
    top = max(counts.values())
    w = min(v for v, c in counts.items() if c == top)
    report = VerificationReport(dict(counts), top, w, _tuples_at(phi, system, w),
                                total, len(counts))
    report.bound_checks.append(
        BoundCheck("product_equals_mass", total, sum(counts.values()),
                   total == sum(counts.values())))
    return report


def is_phi_sidon(phi: LinearForm, system: SidonSystem, g: int = 1) -> bool:
    if g < 1:
        raise InvalidInput(f"g must be >= 1, got {g}")
    return system_profile(phi, system).max_multiplicity <= g


def translate(system: SidonSystem, t, phi: LinearForm) -> tuple[SidonSystem, int]:
    """Shift A_i by t_i; every value of phi moves by phi(t)."""
    t = tuple(t)
    if len(t) != system.h:
        raise InvalidInput(f"shift has {len(t)} entries, system has {system.h} sets")
    shifted = SidonSystem(tuple(tuple(a + ti for a in A) for A, ti in zip(system.sets, t)),
                          system.g)
    return shifted, evaluate(phi, t)


def counting_bound(phi: LinearForm, system: SidonSystem, g: int, n: int) -> list[BoundCheck]:
    """Check prod|A_i| <= g(2Cn+1) together with the image window it rests on.

    Every element must satisfy |a| <= n, and the system must really have
    multiplicity <= g; both are verified and violations raise InvalidInput.
    """
    _check_arity(phi, system)
    if n < 1:
        raise InvalidInput(f"box bound must be positive, got {n}")
    bad = [a for A in system.sets for a in A if abs(a) > n]
    if bad:
        raise InvalidInput(f"elements {bad[:5]} lie outside [-{n}, {n}]")
    report = system_profile(phi, system)
    if report.max_multiplicity > g:
        raise InvalidInput(f"system has multiplicity {report.max_multiplicity} > declared g={g}")
    Cn = phi.C * n
    lo, hi = min(report.profile), max(report.profile)
    checks = [
        BoundCheck("image_in_window", max(-lo, hi), Cn, -Cn <= lo and hi <= Cn),
        BoundCheck("image_size", report.image_size, 2 * Cn + 1,
                   report.image_size <= 2 * Cn + 1),
        BoundCheck("product_le_g_image", report.product_size, g * report.image_size,
                   report.product_size <= g * report.image_size),
        BoundCheck("product_le_g_2Cn_plus_1", report.product_size, g * (2 * Cn + 1),
                   report.product_size <= g * (2 * Cn + 1)),
    ]
    return checks


def density_constant(phi: LinearForm, g: int) -> float:
    """(2gC)^(1/h), the ceiling on F_{phi,g}(n) / n^(1/h) for large n."""
    return (2 * g * phi.C) ** (1.0 / phi.h)


def mixed_radix_system(d) -> tuple[LinearForm, SidonSystem]:
    """Digit sets [0, d_i - 1] with place values 1, d_1, d_1 d_2, ..."""
    d = tuple(d)
    if len(d) < 2:
        raise InvalidInput("need at least two radices")
    if any(di < 2 for di in d):
        raise InvalidInput(f"every radix must be >= 2: {d}")
    coeffs, place = [], 1
    for di in d:
        coeffs.append(place)
        place *= di
    return LinearForm(tuple(coeffs)), SidonSystem(tuple(tuple(range(di)) for di in d), 1)
