"""Exact F_h(n) and F_{phi,g}(n) by exhaustive search on tiny ranges.

These values are ground truth for the constructions, so the searches use
nothing from the finite-field side. Translation invariance lets both
searches put 1 in every set: shifting a set down to start at 1 keeps it
inside [1, n] and shifts every representation count rigidly.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import factorial

from .builder import classical_lower_bound, lower_bound_witness
from .errors import CeilingExceeded, InvalidInput, VerificationFailed
from .linear_forms import LinearForm
from .ntheory import iroot

CLASSICAL_LIMITS = {2: 40, 3: 20}
SYSTEM_LIMIT = 15


@dataclass
class ExtremalResult:
    n: int
    h: int
    g: int
    exact_value: int
    witness: tuple
    nodes_explored: int

    def to_json(self) -> dict:
        w = self.witness
        if w and isinstance(w[0], tuple):
            w = [list(A) for A in w]
        else:
            w = list(w)
        return {"n": self.n, "h": self.h, "g": self.g, "exact": self.exact_value,
                "witness": w, "nodes_explored": self.nodes_explored}


def exact_classical(n: int, h: int = 2, g: int = 1, *, reverse: bool = False,
                    limits: dict | None = None) -> ExtremalResult:
    """Largest B_h[g] subset of [1, n], by depth-first search.

    Orbit counts are maintained per multiset size so adding an element only
    touches the sums that contain it.
    """
    if h < 2 or g < 1:
        raise InvalidInput(f"need h >= 2 and g >= 1, got h={h}, g={g}")
    limit = (limits or CLASSICAL_LIMITS).get(h)
    if limit is None or n > limit:
        raise CeilingExceeded(f"exact_classical(n={n}, h={h}) beyond oracle limit {limit}")
    if n < 1:
        return ExtremalResult(n, h, g, 0, (), 0)

    levels = [Counter() for _ in range(h + 1)]
    levels[0][0] = 1
    chosen: list[int] = []
    best: list[int] = []
    nodes = 0

    def delta_for(x):
        # new size-t multisets use x exactly j >= 1 times
        delta = [Counter() for _ in range(h + 1)]
        for t in range(1, h + 1):
            for j in range(1, t + 1):
                for s, c in levels[t - j].items():
                    delta[t][s + j * x] += c
        return delta

    def apply(delta, sign):
        for t in range(1, h + 1):
            lvl = levels[t]
            for s, c in delta[t].items():
                lvl[s] += sign * c
                if not lvl[s]:
                    del lvl[s]

    def fits(delta):
        top = levels[h]
        return all(top[s] + c <= g for s, c in delta[h].items())

    candidates = list(range(2, n + 1))
    if reverse:
        candidates.reverse()

    def dfs(start):
        nonlocal best, nodes
        nodes += 1
        if len(chosen) > len(best):
            best = sorted(chosen)
        for i in range(start, len(candidates)):
            if len(chosen) + len(candidates) - i <= len(best):
                return
            x = candidates[i]
            delta = delta_for(x)
            if fits(delta):
                apply(delta, 1)
                chosen.append(x)
                dfs(i + 1)
                chosen.pop()
                apply(delta, -1)

    first = delta_for(1)
    apply(first, 1)
    chosen.append(1)
    dfs(0)
    return ExtremalResult(n, h, g, len(best), tuple(best), nodes)


def exact_system(phi: LinearForm, n: int, g: int = 1, *,
                 limit: int = SYSTEM_LIMIT) -> ExtremalResult:
    """Largest q with (A_1, A_2), |A_i| = q, inside [1, n] and R <= g.

    Sizes are tried from the counting ceiling downwards; the first feasible
    q is exact. Witnesses are the lexicographically first pair.
    """
    if phi.h != 2:
        raise InvalidInput("exact_system supports h = 2 only")
    if g < 1:
        raise InvalidInput(f"g must be >= 1, got {g}")
    if n > limit:
        raise CeilingExceeded(f"exact_system(n={n}) beyond oracle limit {limit}")
    if n < 1:
        return ExtremalResult(n, 2, g, 0, ((), ()), 0)
    c1, c2 = phi.coeffs
    nodes = 0
    q_hi = min(n, iroot(g * (2 * phi.C * n + 1), 2))
    rest = list(range(2, n + 1))

    def find(q):
        for tail in combinations(rest, q - 1):
            A1 = (1,) + tail
            counts = Counter(c1 * a + c2 for a in A1)
            A2 = [1]

            def dfs(start):
                nonlocal nodes
                nodes += 1
                if len(A2) == q:
                    return True
                for i in range(start, len(rest)):
                    if len(A2) + len(rest) - i < q:
                        return False
                    y = rest[i]
                    vals = [c1 * a + c2 * y for a in A1]
                    if all(counts[v] < g for v in vals):
                        for v in vals:
                            counts[v] += 1
                        A2.append(y)
                        if dfs(i + 1):
                            return True
                        A2.pop()
                        for v in vals:
                            counts[v] -= 1
                return False

            if dfs(0):
                return A1, tuple(A2)
        return None

    for q in range(q_hi, 0, -1):
        found = find(q)
        if found:
            return ExtremalResult(n, 2, g, q, found, nodes)
    raise AssertionError("q = 1 is always feasible")  # unreachable


@dataclass
class OracleComparison:
    phi: tuple[int, ...]
    n: int
    g: int
    ceiling: int
    oracle: int
    construction: int | None
    construction_applicable: bool
    classical_oracle: int | None = None
    classical_construction: int | None = None
    classical_ceiling: int | None = None

    def to_json(self) -> dict:
        return dict(self.__dict__, phi=list(self.phi))


def oracle_vs_construction(phi: LinearForm, n: int, g: int | None = None) -> OracleComparison:
    """construction q <= exact value <= floor((g(2Cn+1))^(1/h)), checked loudly.

    The construction only certifies multiplicity h!, so its comparison is
    skipped when g < h!. For the form x_1 + x_2 the classical chain
    Bose-Chowla q <= F_2(n) <= floor(sqrt(4n+1)) is checked as well.
    """
    h = phi.h
    g = factorial(h) if g is None else g
    ceiling = iroot(g * (2 * phi.C * n + 1), h)
    exact = exact_system(phi, n, g).exact_value
    applicable = g >= factorial(h)
    wit = lower_bound_witness(phi, n, g) if applicable else None
    constr = wit.q if wit else None
    out = OracleComparison(phi.coeffs, n, g, ceiling, exact, constr, applicable)
    problems = []
    if exact > ceiling:
        problems.append(f"oracle {exact} exceeds counting ceiling {ceiling}")
    if constr is not None and not constr <= exact:
        problems.append(f"construction {constr} exceeds oracle {exact}")
    if phi.coeffs == (1, 1):
        cw = classical_lower_bound(2, n) if n >= 2 else None
        out.classical_oracle = exact_classical(n, 2, 1).exact_value
        out.classical_construction = cw.q if cw else None
        out.classical_ceiling = iroot(2 * phi.C * n + 1, 2)
        if out.classical_oracle > out.classical_ceiling:
            problems.append("classical oracle exceeds counting ceiling")
        if cw and cw.q > out.classical_oracle:
            problems.append("classical construction exceeds classical oracle")
    if problems:
        raise VerificationFailed("; ".join(problems))
    return out
