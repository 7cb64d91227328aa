"""Finite groups as explicit multiplication tables.

A group element is an index into the table, a subgroup is a sorted tuple of
indices wrapped in :class:`Subgroup`, and a group automorphism is a plain
tuple ``images`` with ``images[i]`` the image of element ``i``.  Everything
is immutable after construction, so values can be shared freely between
threads or worker processes.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import (
    InvalidParameterError,
    InvalidPresentationError,
    ResourceLimitError,
    VerificationError,
)

MAX_GROUP_ORDER = 256
DEFAULT_AUT_ORDER_BOUND = 64
DEFAULT_SUBGROUP_LIMIT = 4096


@dataclass(frozen=True)
class FiniteGroup:
    """A group given by its full multiplication table.

    ``table[i][j]`` is the index of the product of elements ``i`` and ``j``
    (in that order).  ``names`` are display strings, unique per element.
    """

    table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...]
    identity: int
    inverses: tuple[int, ...]
    label: str = ""

    @property
    def order(self) -> int:
        return len(self.table)

    def elements(self) -> range:
        return range(len(self.table))

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inv(self, i: int) -> int:
        return self.inverses[i]

    def conj(self, x: int, g: int) -> int:
        """Conjugate of x by g, i.e. g^-1 * x * g."""
        return self.table[self.table[self.inverses[g]][x]][g]

    def power(self, x: int, k: int) -> int:
        if k < 0:
            return self.power(self.inverses[x], -k)
        acc = self.identity
        while k:
            acc = self.table[acc][x]
            k -= 1
        return acc

    def elem_order(self, x: int) -> int:
        k, acc = 1, x
        while acc != self.identity:
            acc = self.table[acc][x]
            k += 1
        return k

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[i][j] == t[j][i] for i in range(len(t)) for j in range(i))

    def name(self, i: int) -> str:
        return self.names[i]

    def element_index(self, token: str) -> int:
        """Resolve a display name, falling back to a raw index."""
        token = token.strip()
        try:
            return self.names.index(token)
        except ValueError:
            pass
        try:
            idx = int(token)
        except ValueError:
            raise InvalidParameterError(
                f"{token!r} is neither an element name nor an index of {self.label or 'group'}"
            ) from None
        if not 0 <= idx < self.order:
            raise InvalidParameterError(f"element index {idx} out of range 0..{self.order - 1}")
        return idx

    def validate(self) -> None:
        """Full group-axiom audit: Latin square, identity, inverses, associativity.

        Associativity uses the generator criterion: if (x*g)*y == x*(g*y) for
        every x, y and every g in a set whose closure under the table is the
        whole set, the operation is associative.
        """
        n = self.order
        full = frozenset(range(n))
        for i in range(n):
            if set(self.table[i]) != full:
                raise InvalidPresentationError(f"row {i} is not a permutation", axiom="latin-square")
            if {self.table[j][i] for j in range(n)} != full:
                raise InvalidPresentationError(f"column {i} is not a permutation", axiom="latin-square")
        e = self.identity
        for i in range(n):
            if self.table[e][i] != i or self.table[i][e] != i:
                raise InvalidPresentationError(f"{i} not fixed by the identity", axiom="identity")
            j = self.inverses[i]
            if self.table[i][j] != e or self.table[j][i] != e:
                raise InvalidPresentationError(f"inverse of {i} is wrong", axiom="inverses")
        for g in generating_sequence(self):
            row_g = self.table[g]
            for x in range(n):
                row_x = self.table[x]
                row_xg = self.table[row_x[g]]
                for y in range(n):
                    if row_xg[y] != row_x[row_g[y]]:
                        raise InvalidPresentationError(
                            f"associativity fails at ({x},{g},{y})", axiom="associativity"
                        )


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by the sorted tuple of its member indices."""

    members: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in set(self.members)

    def __iter__(self):
        return iter(self.members)


def _members(sub: "Subgroup | Iterable[int]") -> tuple[int, ...]:
    if isinstance(sub, Subgroup):
        return sub.members
    return tuple(sorted(set(sub)))


def _finish(table: list[list[int]], names: Sequence[str], label: str) -> FiniteGroup:
    """Attach identity and inverses to a table known to be a group."""
    n = len(table)
    identity = None
    for e in range(n):
        if all(table[e][j] == j for j in range(n)) and all(table[j][e] == j for j in range(n)):
            identity = e
            break
    if identity is None:
        raise InvalidPresentationError("no two-sided identity", axiom="identity")
    inverses = [None] * n
    for i in range(n):
        for j in range(n):
            if table[i][j] == identity and table[j][i] == identity:
                inverses[i] = j
                break
        if inverses[i] is None:
            raise InvalidPresentationError(f"element {i} has no inverse", axiom="inverses")
    return FiniteGroup(
        table=tuple(tuple(row) for row in table),
        names=tuple(names),
        identity=identity,
        inverses=tuple(inverses),
        label=label,
    )


def _check_order_bound(n: int, cap: int = MAX_GROUP_ORDER) -> None:
    if n > cap:
        raise ResourceLimitError(f"group order {n} exceeds the cap {cap}")


# ---------------------------------------------------------------------------
# constructors

def build_cyclic(n: int) -> FiniteGroup:
    """Z_n with element i named "i" and table (i+j) mod n."""
    if n < 1:
        raise InvalidParameterError("cyclic group needs n >= 1")
    _check_order_bound(n)
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return _finish(table, [str(i) for i in range(n)], f"cyclic:{n}")


def _rot_name(i: int) -> str:
    return "1" if i == 0 else ("a" if i == 1 else f"a^{i}")


def build_dihedral(n: int) -> FiniteGroup:
    """Order-2n group <a,b | a^n = b^2 = 1, b a b = a^-1>.

    Elements 0..n-1 are a^i, elements n..2n-1 are a^(i-n) * b.
    """
    if n < 2:
        raise InvalidParameterError("dihedral group needs n >= 2")
    _check_order_bound(2 * n)
    size = 2 * n
    table = [[0] * size for _ in range(size)]
    for i in range(n):
        for j in range(n):
            table[i][j] = (i + j) % n                    # a^i * a^j
            table[i][n + j] = n + (i + j) % n            # a^i * a^j b
            table[n + i][j] = n + (i - j) % n            # a^i b * a^j
            table[n + i][n + j] = (i - j) % n            # a^i b * a^j b
    names = [_rot_name(i) for i in range(n)]
    names += ["b" if i == 0 else f"{_rot_name(i)}*b" for i in range(n)]
    return _finish(table, names, f"dihedral:{n}")


def build_generalized_dihedral(a: FiniteGroup) -> FiniteGroup:
    """The group <A, t> with t^2 = 1 and x^t = x^-1 for every x in abelian A."""
    if not a.is_abelian():
        raise InvalidParameterError("generalized dihedral construction needs an abelian group")
    n = a.order
    _check_order_bound(2 * n)
    size = 2 * n
    table = [[0] * size for _ in range(size)]
    for x in range(n):
        for y in range(n):
            table[x][y] = a.mul(x, y)
            table[x][n + y] = n + a.mul(x, y)
            table[n + x][y] = n + a.mul(x, a.inv(y))     # (x t)(y) = x y^-1 t
            table[n + x][n + y] = a.mul(x, a.inv(y))     # (x t)(y t) = x y^-1
    names = list(a.names)
    names += ["t" if x == a.identity else f"{a.names[x]}*t" for x in range(n)]
    return _finish(table, names, f"gendih:{a.label}")


def build_direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Componentwise product; element (x, y) has index x*|H| + y."""
    _check_order_bound(g.order * h.order)
    m = h.order
    size = g.order * m
    table = [[0] * size for _ in range(size)]
    for x1 in range(g.order):
        for y1 in range(m):
            row = table[x1 * m + y1]
            for x2 in range(g.order):
                gx = g.mul(x1, x2) * m
                hrow = h.table[y1]
                for y2 in range(m):
                    row[x2 * m + y2] = gx + hrow[y2]
    names = [f"({g.names[x]},{h.names[y]})" for x in range(g.order) for y in range(m)]
    return _finish(table, names, f"product:{g.label},{h.label}")


_QUAT_UNITS = ("1", "i", "j", "k")
_QUAT_MUL = {
    ("1", "1"): ("1", 1), ("1", "i"): ("i", 1), ("1", "j"): ("j", 1), ("1", "k"): ("k", 1),
    ("i", "1"): ("i", 1), ("i", "i"): ("1", -1), ("i", "j"): ("k", 1), ("i", "k"): ("j", -1),
    ("j", "1"): ("j", 1), ("j", "i"): ("k", -1), ("j", "j"): ("1", -1), ("j", "k"): ("i", 1),
    ("k", "1"): ("k", 1), ("k", "i"): ("j", 1), ("k", "j"): ("i", -1), ("k", "k"): ("1", -1),
}


def build_quaternion() -> FiniteGroup:
    """The eight quaternion units with the usual multiplication."""
    elems = [(u, s) for u in _QUAT_UNITS for s in (1, -1)]
    index = {e: i for i, e in enumerate(elems)}
    size = 8
    table = [[0] * size for _ in range(size)]
    for (u1, s1), (u2, s2) in itertools.product(elems, repeat=2):
        unit, sign = _QUAT_MUL[(u1, u2)]
        table[index[(u1, s1)]][index[(u2, s2)]] = index[(unit, s1 * s2 * sign)]
    names = [u if s == 1 else f"-{u}" for (u, s) in elems]
    return _finish(table, names, "quaternion")


def build_metacyclic(m: int, r: int, s: int, t: int,
                     max_order: int = MAX_GROUP_ORDER) -> FiniteGroup:
    """The group <a, b | a^m = 1, b^s = a^t, b^-1 a b = a^r> of order m*s.

    The table is built on normal forms b^j a^i (the relation gives
    a b = b a^r, so a-powers move right) and then audited; parameters whose
    table fails a group axiom or one of the three defining relations are
    rejected with the failing axiom named.  ``max_order`` lifts the default
    size cap; the nonsplit search needs orders up to p^6.
    """
    if m < 1 or s < 1:
        raise InvalidParameterError("metacyclic parameters need m >= 1 and s >= 1")
    _check_order_bound(m * s, max_order)
    r %= m
    t %= m
    size = m * s
    rpow = [pow(r, j, m) for j in range(s)]
    table = [[0] * size for _ in range(size)]
    for j1 in range(s):
        for i1 in range(m):
            row = table[j1 * m + i1]
            for j2 in range(s):
                for i2 in range(m):
                    i = (i1 * rpow[j2] + i2) % m
                    j = j1 + j2
                    if j >= s:
                        i = (i + t) % m
                        j -= s
                    row[j2 * m + i2] = j * m + i

    def name_of(j: int, i: int) -> str:
        parts = []
        if j:
            parts.append("b" if j == 1 else f"b^{j}")
        if i:
            parts.append("a" if i == 1 else f"a^{i}")
        return "*".join(parts) if parts else "1"

    names = [name_of(j, i) for j in range(s) for i in range(m)]
    group = _finish(table, names, f"metacyclic:{m},{r},{s},{t}")
    group.validate()
    a = 1 if m > 1 else group.identity
    b = m if s > 1 else group.power(a, t)
    if group.power(a, m) != group.identity:
        raise InvalidPresentationError("a^m != 1 in the constructed table", axiom="relation a^m")
    if group.power(b, s) != group.power(a, t):
        raise InvalidPresentationError("b^s != a^t in the constructed table", axiom="relation b^s")
    if group.conj(a, b) != group.power(a, r):
        raise InvalidPresentationError(
            "b^-1 a b != a^r in the constructed table", axiom="relation conjugation"
        )
    return group


def group_from_table_text(text: str, label: str = "table") -> FiniteGroup:
    """Parse "order, order^2 indices row-major, optional names line" and audit it."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    tokens = " ".join(lines).split()
    if not tokens:
        raise InvalidParameterError("empty table file")
    try:
        n = int(tokens[0])
    except ValueError:
        raise InvalidParameterError(f"bad order token {tokens[0]!r}") from None
    if n < 1:
        raise InvalidParameterError("table order must be positive")
    _check_order_bound(n)
    need = 1 + n * n
    if len(tokens) < need:
        raise InvalidParameterError(f"expected {n * n} table entries, found {len(tokens) - 1}")
    try:
        flat = [int(tok) for tok in tokens[1:need]]
    except ValueError as exc:
        raise InvalidParameterError(f"bad table entry: {exc}") from None
    if any(not 0 <= v < n for v in flat):
        raise InvalidParameterError("table entry out of range")
    names = tokens[need:]
    if names and len(names) != n:
        raise InvalidParameterError(f"expected {n} names, found {len(names)}")
    if not names:
        names = [str(i) for i in range(n)]
    if len(set(names)) != n:
        raise InvalidParameterError("element names must be unique")
    table = [flat[i * n:(i + 1) * n] for i in range(n)]
    group = _finish(table, names, label)
    group.validate()
    return group


def subgroup_as_group(g: FiniteGroup, sub: "Subgroup | Iterable[int]") -> FiniteGroup:
    """Re-index a subgroup as a standalone group (names inherited)."""
    members = _members(sub)
    pos = {x: i for i, x in enumerate(members)}
    mset = set(members)
    table = []
    for x in members:
        row = []
        for y in members:
            z = g.mul(x, y)
            if z not in mset:
                raise InvalidParameterError("member set is not closed under multiplication")
            row.append(pos[z])
        table.append(row)
    label = f"{g.label}:sub:" + "-".join(map(str, members))
    return _finish(table, [g.names[x] for x in members], label)


# ---------------------------------------------------------------------------
# subgroup machinery

def subgroup_generated(g: FiniteGroup, seeds: Iterable[int]) -> Subgroup:
    """Closure of the seeds (plus the identity) under the group operation."""
    members = {g.identity}
    gens = sorted(set(seeds))
    if any(not 0 <= x < g.order for x in gens):
        raise InvalidParameterError("seed element out of range")
    frontier = [g.identity]
    while frontier:
        new = []
        for x in frontier:
            row = g.table[x]
            for t in gens:
                y = row[t]
                if y not in members:
                    members.add(y)
                    new.append(y)
        frontier = new
    return Subgroup(tuple(sorted(members)))


def generating_sequence(g: FiniteGroup) -> tuple[int, ...]:
    """Greedy minimal generating sequence, deterministic (smallest new element first)."""
    seq: list[int] = []
    closure = {g.identity}
    while len(closure) < g.order:
        x = min(i for i in range(g.order) if i not in closure)
        seq.append(x)
        closure = set(subgroup_generated(g, seq).members)
    return tuple(seq)


def is_subgroup(g: FiniteGroup, sub: "Subgroup | Iterable[int]") -> bool:
    members = _members(sub)
    mset = set(members)
    if g.identity not in mset:
        return False
    return all(g.mul(x, g.inv(y)) in mset for x in members for y in members)


def is_normal(g: FiniteGroup, sub: "Subgroup | Iterable[int]") -> bool:
    members = _members(sub)
    mset = set(members)
    return all(g.conj(x, a) in mset for x in members for a in range(g.order))


@lru_cache(maxsize=None)
def all_subgroups(g: FiniteGroup, limit: int = DEFAULT_SUBGROUP_LIMIT) -> tuple[Subgroup, ...]:
    """Every subgroup, found by repeatedly extending known subgroups by one generator."""
    trivial = frozenset({g.identity})
    seen = {trivial}
    worklist = [trivial]
    while worklist:
        current = worklist.pop()
        for x in range(g.order):
            if x in current:
                continue
            bigger = frozenset(subgroup_generated(g, tuple(current) + (x,)).members)
            if bigger not in seen:
                seen.add(bigger)
                if len(seen) > limit:
                    raise ResourceLimitError(f"more than {limit} subgroups")
                if len(bigger) < g.order:
                    worklist.append(bigger)
    return tuple(Subgroup(tuple(sorted(s))) for s in sorted(seen, key=lambda s: (len(s), sorted(s))))


def _closure_bounded(g: FiniteGroup, seeds: Sequence[int], bound: int) -> Optional[set[int]]:
    """Subgroup closure, abandoned (None) once it exceeds the bound."""
    members = {g.identity}
    frontier = [g.identity]
    while frontier:
        new = []
        for x in frontier:
            row = g.table[x]
            for t in seeds:
                y = row[t]
                if y not in members:
                    members.add(y)
                    if len(members) > bound:
                        return None
                    new.append(y)
        frontier = new
    return members


def has_complement(g: FiniteGroup, sub: "Subgroup | Iterable[int]") -> bool:
    """Whether some H <= G satisfies H meet N = 1 and |H| * |N| = |G|.

    Tries subgroups generated by one or two elements outside N first, then
    falls back to the full subgroup list.  A complement is isomorphic to
    G/N, so the one- and two-generator scans are already complete when the
    quotient needs that few generators; the fallback only runs otherwise.
    """
    members = _members(sub)
    if not is_subgroup(g, members):
        raise InvalidParameterError("N is not a subgroup")
    if not is_normal(g, members):
        raise InvalidParameterError("N is not normal")
    nset = set(members)
    target = g.order // len(members)
    if target == 1 or len(members) == 1:
        return True

    def is_complement(h: "set[int] | tuple[int, ...]") -> bool:
        return len(h) == target and len(nset.intersection(h)) == 1

    outside = [x for x in range(g.order) if x not in nset]
    singles = {}
    for x in outside:
        h = _closure_bounded(g, (x,), target)
        if h is None:
            continue
        if is_complement(h):
            return True
        singles[x] = len(h)
    if _quotient_generated_by(g, members, 1):
        return False  # complement would be cyclic of order target; none exists
    for x, y in itertools.combinations(outside, 2):
        sx, sy = singles.get(x), singles.get(y)
        if sx is None or sy is None or target % sx or target % sy:
            continue
        h = _closure_bounded(g, (x, y), target)
        if h is not None and is_complement(h):
            return True
    if _quotient_generated_by(g, members, 2):
        return False  # complement would be 2-generated; the pair scan was complete
    return any(is_complement(h.members) for h in all_subgroups(g))


def _subgroup_generators(g: FiniteGroup, members: tuple[int, ...]) -> tuple[int, ...]:
    """Small generating subset of a subgroup, greedy and deterministic."""
    target = set(members)
    gens: list[int] = []
    closure = {g.identity}
    while closure != target:
        gens.append(min(x for x in members if x not in closure))
        closure = set(subgroup_generated(g, gens).members)
    return tuple(gens)


def _quotient_generated_by(g: FiniteGroup, members: tuple[int, ...], k: int) -> bool:
    """Whether G/N needs at most k generators (N given by its member tuple).

    Uses closures in G: G/N is generated by the images of y_1..y_k exactly
    when N together with y_1..y_k generates G.
    """
    candidates = [y for y in range(g.order) if y not in set(members)]
    if not candidates:
        return True
    ngens = _subgroup_generators(g, members)
    if k == 1:
        return any(
            _closure_bounded(g, ngens + (y,), g.order - 1) is None for y in candidates
        )
    if k == 2:
        return any(
            _closure_bounded(g, ngens + (y, z), g.order - 1) is None
            for i, y in enumerate(candidates)
            for z in candidates[i:]
        )
    raise InvalidParameterError("only k <= 2 supported")


def quotient(g: FiniteGroup, sub: "Subgroup | Iterable[int]") -> tuple[FiniteGroup, tuple[int, ...]]:
    """Factor group on the cosets of a normal subgroup, plus the projection map."""
    members = _members(sub)
    if not is_subgroup(g, members):
        raise InvalidParameterError("N is not a subgroup")
    if not is_normal(g, members):
        raise InvalidParameterError("N is not normal")
    cosets: dict[frozenset, int] = {}
    proj = [None] * g.order
    for x in range(g.order):
        if proj[x] is not None:
            continue
        coset = frozenset(g.mul(x, m) for m in members)
        idx = cosets.setdefault(coset, len(cosets))
        for y in coset:
            proj[y] = idx
    # renumber cosets by their minimal member so the result is deterministic
    by_min = sorted(cosets, key=min)
    renum = {cosets[c]: i for i, c in enumerate(by_min)}
    proj = tuple(renum[p] for p in proj)
    reps = [min(c) for c in by_min]
    k = len(reps)
    table = [[proj[g.mul(reps[i], reps[j])] for j in range(k)] for i in range(k)]
    names = [f"[{g.names[r]}]" for r in reps]
    label = f"{g.label}:quo:" + "-".join(map(str, members))
    q = _finish(table, names, label)
    for x in range(g.order):
        for y in range(g.order):
            if proj[g.mul(x, y)] != q.mul(proj[x], proj[y]):
                raise VerificationError("quotient projection is not a homomorphism")
    return q, proj


# ---------------------------------------------------------------------------
# automorphisms and isomorphisms

def _extend_images(
    g: FiniteGroup, h: FiniteGroup, gens: Sequence[int], imgs: Sequence[int]
) -> Optional[dict[int, int]]:
    """Extend generator images to <gens> by closure; None when inconsistent."""
    phi = {g.identity: h.identity}
    order_list = [g.identity]
    qi = 0
    while qi < len(order_list):
        x = order_list[qi]
        qi += 1
        fx = phi[x]
        for gen, img in zip(gens, imgs):
            y = g.mul(x, gen)
            fy = h.mul(fx, img)
            seen = phi.get(y)
            if seen is None:
                phi[y] = fy
                order_list.append(y)
            elif seen != fy:
                return None
    return phi


def _element_profile(g: FiniteGroup, x: int) -> tuple[int, int]:
    """(order, centralizer order): invariant under any isomorphism."""
    row = g.table[x]
    centralizer = sum(1 for y in range(g.order) if row[y] == g.table[y][x])
    return g.elem_order(x), centralizer


def _hom_search(g: FiniteGroup, h: FiniteGroup, find_all: bool) -> list[tuple[int, ...]]:
    """Bijective homomorphisms G -> H by backtracking over generator images."""
    if g.order != h.order:
        return []
    gens = generating_sequence(g)
    h_profiles: dict[tuple[int, int], list[int]] = {}
    for x in range(h.order):
        h_profiles.setdefault(_element_profile(h, x), []).append(x)
    candidates = [h_profiles.get(_element_profile(g, gen), []) for gen in gens]
    found: list[tuple[int, ...]] = []

    def recurse(depth: int, imgs: list[int]) -> bool:
        if depth == len(gens):
            phi = _extend_images(g, h, gens, imgs)
            if phi is not None and len(set(phi.values())) == g.order:
                found.append(tuple(phi[x] for x in range(g.order)))
                return not find_all
            return False
        for img in candidates[depth]:
            if _extend_images(g, h, gens[: depth + 1], imgs + [img]) is None:
                continue
            if recurse(depth + 1, imgs + [img]):
                return True
        return False

    if not gens:  # trivial group
        return [(g.identity,)] if h.order == 1 else []
    recurse(0, [])
    return sorted(found)


@lru_cache(maxsize=None)
def automorphisms(g: FiniteGroup, max_order: int = DEFAULT_AUT_ORDER_BOUND) -> tuple[tuple[int, ...], ...]:
    """The full automorphism group as image tuples, sorted.

    Backtracks over images of a greedy generating sequence, pruning by
    element order and by homomorphism consistency on the partial closure.
    """
    if g.order > max_order:
        raise ResourceLimitError(
            f"automorphism search limited to order {max_order}, group has order {g.order}"
        )
    return tuple(_hom_search(g, g, find_all=True))


def inner_automorphism(g: FiniteGroup, elem: int) -> tuple[int, ...]:
    """The map x -> g^-1 x g."""
    return tuple(g.conj(x, elem) for x in range(g.order))


def compose_maps(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Apply a, then b."""
    return tuple(b[x] for x in a)


def invert_map(a: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def is_automorphism_map(g: FiniteGroup, images: Sequence[int]) -> bool:
    if sorted(images) != list(range(g.order)):
        return False
    if images[g.identity] != g.identity:
        return False
    return all(
        images[g.mul(x, y)] == g.mul(images[x], images[y])
        for x in range(g.order)
        for y in range(g.order)
    )


def is_characteristic(g: FiniteGroup, sub: "Subgroup | Iterable[int]",
                      max_aut_order: int = DEFAULT_AUT_ORDER_BOUND) -> bool:
    """Whether the subgroup is fixed setwise by every automorphism."""
    members = set(_members(sub))
    return all(
        {alpha[x] for x in members} == members for alpha in automorphisms(g, max_aut_order)
    )


def find_group_isomorphism(g: FiniteGroup, h: FiniteGroup) -> Optional[tuple[int, ...]]:
    """An isomorphism G -> H as an image tuple, or None."""
    if g.order != h.order:
        return None
    if sorted(map(g.elem_order, range(g.order))) != sorted(map(h.elem_order, range(h.order))):
        return None
    if g.is_abelian() != h.is_abelian():
        return None
    result = _hom_search(g, h, find_all=False)
    return result[0] if result else None


def groups_are_isomorphic(g: FiniteGroup, h: FiniteGroup) -> bool:
    return find_group_isomorphism(g, h) is not None
