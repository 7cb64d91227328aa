"""Permutation groups with a deterministic Schreier-Sims stabilizer chain.

Permutations are plain image tuples on 0..m-1; the product ``multiply(p, q)``
applies p first, then q.
"""
from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple, Optional, Sequence

from . import groups
from .errors import InvalidParameterError, ResourceLimitError

DEFAULT_SEARCH_BUDGET = 10**6
_ELEMENT_ENUM_BOUND = 200_000


def identity_perm(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def is_identity(p: Sequence[int]) -> bool:
    return all(i == j for i, j in enumerate(p))


def multiply(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Apply p, then q."""
    return tuple(q[i] for i in p)


def inverse(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def from_cycles(n: int, cycles: Sequence[Sequence[int]]) -> tuple[int, ...]:
    out = list(range(n))
    for cycle in cycles:
        for a, b in zip(cycle, cycle[1:]):
            out[a] = b
        if cycle:
            out[cycle[-1]] = cycle[0]
    return tuple(out)


def cycle_string(p: Sequence[int]) -> str:
    """Disjoint-cycle notation, fixed points omitted; '()' for the identity."""
    seen = set()
    parts = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cycle = [i]
        j = p[i]
        while j != i:
            seen.add(j)
            cycle.append(j)
            j = p[j]
        parts.append("(" + " ".join(map(str, cycle)) + ")")
    return "".join(parts) if parts else "()"


def image_line(p: Sequence[int]) -> str:
    return " ".join(map(str, p))


class PermGroup:
    """Group generated by image-tuple permutations of 0..degree-1.

    The stabilizer chain is built lazily with a deterministic Schreier-Sims
    (fixed generator ordering, smallest moved point as next base point), so
    orders, membership answers and orbit listings are reproducible.
    """

    def __init__(self, degree: int, generators: Sequence[Sequence[int]] = ()):
        if degree < 0:
            raise InvalidParameterError("degree must be non-negative")
        self.degree = degree
        gens = []
        for p in generators:
            p = tuple(p)
            if len(p) != degree or sorted(p) != list(range(degree)):
                raise InvalidParameterError("generator is not a permutation of 0..degree-1")
            if not is_identity(p):
                gens.append(p)
        self.generators: tuple[tuple[int, ...], ...] = tuple(sorted(set(gens)))
        self._chain: Optional[tuple[list[int], list[list], list[dict]]] = None

    def __reduce__(self):
        return (PermGroup, (self.degree, self.generators))

    # -- stabilizer chain ---------------------------------------------------

    def _build_chain(self) -> None:
        n = self.degree
        base: list[int] = []
        gens_at: list[list[tuple[int, ...]]] = []
        trans: list[dict[int, tuple[int, ...]]] = []

        def rebuild(i: int) -> None:
            b = base[i]
            t = {b: identity_perm(n)}
            frontier = [b]
            while frontier:
                new = []
                for c in frontier:
                    pc = t[c]
                    for s in gens_at[i]:
                        d = s[c]
                        if d not in t:
                            t[d] = multiply(pc, s)
                            new.append(d)
                frontier = sorted(new)
            trans[i] = t

        def strip(p: tuple[int, ...], i: int) -> tuple[tuple[int, ...], int]:
            while i < len(base):
                c = p[base[i]]
                ti = trans[i]
                if c not in ti:
                    return p, i
                p = multiply(p, inverse(ti[c]))
                i += 1
            return p, len(base)

        def new_level(p: tuple[int, ...]) -> None:
            b = min(x for x in range(n) if p[x] != x)
            base.append(b)
            gens_at.append([])
            trans.append({b: identity_perm(n)})

        for g in self.generators:
            j = 0
            while j < len(base) and g[base[j]] == base[j]:
                j += 1
            if j == len(base):
                new_level(g)
            for i in range(j + 1):
                gens_at[i].append(g)
        for i in reversed(range(len(base))):
            rebuild(i)

        i = len(base) - 1
        while i >= 0:
            progressed = False
            t_i = trans[i]
            for c in sorted(t_i):
                u_c = t_i[c]
                for s in gens_at[i]:
                    sg = multiply(multiply(u_c, s), inverse(t_i[s[c]]))
                    if is_identity(sg):
                        continue
                    residue, j = strip(sg, i + 1)
                    if is_identity(residue):
                        continue
                    if j == len(base):
                        new_level(residue)
                    for l in range(i + 1, j + 1):
                        gens_at[l].append(residue)
                    for l in reversed(range(i + 1, j + 1)):
                        rebuild(l)
                    i = j
                    progressed = True
                    break
                if progressed:
                    break
            if progressed:
                continue
            i -= 1
        self._chain = (base, gens_at, trans)

    def _chain_data(self):
        if self._chain is None:
            self._build_chain()
        return self._chain

    def order(self) -> int:
        base, _, trans = self._chain_data()
        out = 1
        for t in trans:
            out *= len(t)
        return out

    def contains(self, p: Sequence[int]) -> bool:
        p = tuple(p)
        if len(p) != self.degree:
            raise InvalidParameterError("degree mismatch")
        if sorted(p) != list(range(self.degree)):
            raise InvalidParameterError("not a permutation")
        base, _, trans = self._chain_data()
        for i in range(len(base)):
            c = p[base[i]]
            if c not in trans[i]:
                return False
            p = multiply(p, inverse(trans[i][c]))
        return is_identity(p)

    # -- orbits and action flavour -------------------------------------------

    def orbit(self, point: int) -> tuple[int, ...]:
        seen = {point}
        frontier = [point]
        while frontier:
            new = []
            for c in frontier:
                for g in self.generators:
                    d = g[c]
                    if d not in seen:
                        seen.add(d)
                        new.append(d)
            frontier = new
        return tuple(sorted(seen))

    def orbits(self) -> tuple[tuple[int, ...], ...]:
        seen: set[int] = set()
        out = []
        for v in range(self.degree):
            if v in seen:
                continue
            orb = self.orbit(v)
            seen.update(orb)
            out.append(orb)
        return tuple(out)

    def is_transitive(self) -> bool:
        return self.degree <= 1 or len(self.orbit(0)) == self.degree

    def is_semiregular(self) -> bool:
        order = self.order()
        return all(len(orb) == order for orb in self.orbits())

    def is_regular(self) -> bool:
        return self.is_transitive() and self.is_semiregular()

    def elements(self, limit: int = _ELEMENT_ENUM_BOUND) -> list[tuple[int, ...]]:
        """All elements by closure; raises ResourceLimitError past the limit."""
        seen = {identity_perm(self.degree)}
        frontier = sorted(seen)
        while frontier:
            new = []
            for p in frontier:
                for g in self.generators:
                    q = multiply(p, g)
                    if q not in seen:
                        seen.add(q)
                        if len(seen) > limit:
                            raise ResourceLimitError(f"group has more than {limit} elements")
                        new.append(q)
            frontier = sorted(new)
        return sorted(seen)


# ---------------------------------------------------------------------------
# regular-subgroup search

class SearchOutcome(NamedTuple):
    status: str  # "found" | "none" | "unknown"
    subgroup: Optional[PermGroup]


class _BudgetExhausted(Exception):
    pass


class _Budget:
    def __init__(self, amount: int):
        self.remaining = amount

    def spend(self, k: int = 1) -> None:
        if self.remaining < k:
            raise _BudgetExhausted
        self.remaining -= k


def _abstract_table(elems: list[tuple[int, ...]]) -> groups.FiniteGroup:
    index = {p: i for i, p in enumerate(elems)}
    table = [[index[multiply(p, q)] for q in elems] for p in elems]
    return groups._finish(table, [str(i) for i in range(len(elems))], "perm-closure")


def _seeded_index2(g: PermGroup, seed: PermGroup, budget: _Budget) -> Optional[PermGroup]:
    """Look for a regular overgroup of the seed with index 2.

    The seed must be semiregular with two equal orbits covering the domain.
    Any regular overgroup R has the seed normal of index 2, so the extra
    generator is determined by where it sends a base point, by the
    conjugation action it induces on the seed, and by its square inside the
    seed; all three are enumerated and each candidate is tested for
    membership in g.
    """
    m = g.degree
    if seed.degree != m:
        return None
    orbs = seed.orbits()
    if len(orbs) != 2 or seed.order() * 2 != m or not seed.is_semiregular():
        return None
    o1, o2 = orbs
    if len(o1) != len(o2):
        return None
    for p in seed.generators:
        if not g.contains(p):
            raise InvalidParameterError("seed subgroup is not contained in the ambient group")
    v0 = o1[0]
    elems = seed.elements(limit=m)
    h_list = sorted(elems, key=lambda p: p[v0])
    habs = _abstract_table(h_list)
    autos = groups.automorphisms(habs, max_order=len(h_list))
    inners = [groups.inner_automorphism(habs, k) for k in range(habs.order)]
    for u in o2:
        for phi in autos:
            psi = groups.compose_maps(phi, phi)
            for h0 in range(habs.order):
                if inners[h0] != psi:
                    continue
                budget.spend()
                sigma = [0] * m
                for k, h in enumerate(h_list):
                    sigma[h[v0]] = h_list[phi[k]][u]
                    sigma[h[u]] = h_list[habs.mul(h0, phi[k])][v0]
                if len(set(sigma)) != m:
                    continue
                sigma = tuple(sigma)
                if not g.contains(sigma):
                    continue
                candidate = PermGroup(m, seed.generators + (sigma,))
                if candidate.order() == m and candidate.is_regular():
                    return candidate
    return None


def _exhaustive_regular(g: PermGroup, budget: _Budget) -> Optional[PermGroup]:
    """Complete backtracking search for a regular subgroup of order = degree."""
    m = g.degree
    if g.order() % m != 0:
        return None
    ident = identity_perm(m)
    elems = g.elements()
    by_image: dict[int, list[tuple[int, ...]]] = {}
    for p in elems:
        if p == ident or any(p[i] == i for i in range(m)):
            continue  # only fixed-point-free elements can sit in a regular subgroup
        by_image.setdefault(p[0], []).append(p)
    for lst in by_image.values():
        lst.sort()

    def close(current: frozenset, extra: tuple[int, ...]) -> Optional[frozenset]:
        budget.spend()
        members = set(current)
        frontier = [extra]
        while frontier:
            p = frontier.pop()
            if p in members:
                continue
            if p != ident and any(p[i] == i for i in range(m)):
                return None
            members.add(p)
            if len(members) > m:
                return None
            for q in list(members):
                frontier.append(multiply(p, q))
                frontier.append(multiply(q, p))
        return frozenset(members)

    def extend(current: frozenset) -> Optional[frozenset]:
        if len(current) == m:
            return current
        covered = {p[0] for p in current}
        target = min(x for x in range(m) if x not in covered)
        for p in by_image.get(target, ()):
            bigger = close(current, p)
            if bigger is None or m % len(bigger) != 0:
                continue
            result = extend(bigger)
            if result is not None:
                return result
        return None

    found = extend(frozenset({ident}))
    if found is None:
        return None
    candidate = PermGroup(m, tuple(sorted(found)))
    if not (candidate.order() == m and candidate.is_regular()):
        return None
    return candidate


def find_regular_subgroup(
    g: PermGroup,
    budget: int = DEFAULT_SEARCH_BUDGET,
    seeds: Sequence[Optional[PermGroup]] = (),
) -> SearchOutcome:
    """Search for a subgroup acting regularly on the domain.

    Returns ``found`` with a verified regular subgroup, ``none`` only after
    the complete search space was exhausted, and ``unknown`` when the node
    budget ran out or the ambient group is too large to enumerate.
    """
    m = g.degree
    if m <= 1:
        return SearchOutcome("found", PermGroup(m, ()))
    if not g.is_transitive():
        return SearchOutcome("none", None)
    bud = _Budget(budget)
    try:
        for seed in seeds:
            if seed is None:
                continue
            found = _seeded_index2(g, seed, bud)
            if found is not None:
                return SearchOutcome("found", found)
        if g.order() <= _ELEMENT_ENUM_BOUND:
            found = _exhaustive_regular(g, bud)
            if found is not None:
                return SearchOutcome("found", found)
            return SearchOutcome("none", None)
        return SearchOutcome("unknown", None)
    except _BudgetExhausted:
        return SearchOutcome("unknown", None)
