"""Haar graphs H(G,S) and the decision procedures built on them.

Vertex convention for H(G,S) on a group of order n: (x,0) is vertex x and
(x,1) is vertex n+x; edges join (x,0) to (s*x,1) for every s in S.  Every
permutation of Haar-graph vertices in this module uses that numbering.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from . import groups as gr
from .errors import (
    InvalidConnectionSetError,
    InvalidParameterError,
    InvalidWitnessError,
    ResourceLimitError,
    VerificationError,
)
from .graphs import Graph, automorphism_group, bipartition, is_isomorphic
from .perms import (
    PermGroup,
    SearchOutcome,
    find_regular_subgroup,
    identity_perm,
    inverse,
    multiply,
)

DEFAULT_CAYLEY_BUDGET = 10**6


@dataclass(frozen=True)
class HaarSpec:
    """A group together with an arbitrary subset of it."""

    group: gr.FiniteGroup
    s: tuple[int, ...]

    def __post_init__(self):
        s = tuple(sorted(set(self.s)))
        if any(not 0 <= x < self.group.order for x in s):
            raise InvalidParameterError("subset element out of range")
        object.__setattr__(self, "s", s)

    @property
    def valency(self) -> int:
        return len(self.s)

    def subset_names(self) -> tuple[str, ...]:
        return tuple(self.group.names[x] for x in self.s)

    def text(self) -> str:
        return f"{self.group.label}|{','.join(self.subset_names())}"


@dataclass(frozen=True)
class AlgCayleyWitness:
    """A pair (g, alpha) with g^alpha = g, alpha^2 = inner(g), g*S^alpha = S^-1."""

    g: int
    alpha: tuple[int, ...]


@dataclass(frozen=True)
class SigmaMap:
    """Class-swapping automorphism derived from a witness; squares to g_R."""

    perm: tuple[int, ...]
    g: int
    alpha: tuple[int, ...]


# ---------------------------------------------------------------------------
# constructions

def haar_graph(spec: HaarSpec) -> Graph:
    g = spec.group
    n = g.order
    edges = [(x, n + g.mul(s, x)) for s in spec.s for x in range(n)]
    labels = [f"({g.names[x]},0)" for x in range(n)] + [f"({g.names[x]},1)" for x in range(n)]
    return Graph(2 * n, edges, labels)


def cayley_graph(g: gr.FiniteGroup, s: Iterable[int]) -> Graph:
    s = tuple(sorted(set(s)))
    if any(not 0 <= x < g.order for x in s):
        raise InvalidParameterError("connection-set element out of range")
    if g.identity in s:
        raise InvalidConnectionSetError("connection set contains the identity")
    if any(g.inv(x) not in set(s) for x in s):
        raise InvalidConnectionSetError("connection set is not inverse-closed")
    edges = [(x, g.mul(c, x)) for c in s for x in range(g.order) if x < g.mul(c, x)]
    return Graph(g.order, edges, list(g.names))


def right_translations(g: gr.FiniteGroup) -> PermGroup:
    """The action (x,i) -> (x*t,i) on the 2|G| Haar vertices."""
    n = g.order
    gens = []
    for t in gr.generating_sequence(g):
        images = [g.mul(x, t) for x in range(n)] + [n + g.mul(x, t) for x in range(n)]
        gens.append(tuple(images))
    return PermGroup(2 * n, gens)


def right_translation_perm(g: gr.FiniteGroup, t: int) -> tuple[int, ...]:
    n = g.order
    return tuple([g.mul(x, t) for x in range(n)] + [n + g.mul(x, t) for x in range(n)])


# ---------------------------------------------------------------------------
# subset calculus

def connectivity_criterion(spec: HaarSpec) -> bool:
    """True iff the difference set S*S^-1 generates the whole group."""
    if not spec.s:
        raise InvalidParameterError("connectivity criterion needs a nonempty subset")
    g = spec.group
    diffs = {g.mul(x, g.inv(y)) for x in spec.s for y in spec.s}
    return gr.subgroup_generated(g, diffs).order == g.order


def translate(spec: HaarSpec, g_elem: int, alpha: Sequence[int], h_elem: int) -> HaarSpec:
    """Replace S by g * S^alpha * h."""
    g = spec.group
    if not gr.is_automorphism_map(g, alpha):
        raise InvalidParameterError("alpha is not an automorphism")
    new_s = tuple(g.mul(g.mul(g_elem, alpha[x]), h_elem) for x in spec.s)
    return HaarSpec(g, new_s)


def difference_multiset(spec: HaarSpec) -> dict[int, tuple[int, ...]]:
    """Map k to the set of elements writable as x*y^-1 in exactly k ways over S x S."""
    g = spec.group
    counts: dict[int, int] = {}
    for x in spec.s:
        for y in spec.s:
            d = g.mul(x, g.inv(y))
            counts[d] = counts.get(d, 0) + 1
    out: dict[int, list[int]] = {}
    for d, k in counts.items():
        out.setdefault(k, []).append(d)
    return {k: tuple(sorted(v)) for k, v in sorted(out.items())}


# ---------------------------------------------------------------------------
# witnesses

@lru_cache(maxsize=None)
def _witness_pairs(
    g: gr.FiniteGroup, max_aut_order: int
) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """All (g, alpha) with g^alpha = g and alpha^2 = inner(g), in scan order."""
    autos = gr.automorphisms(g, max_aut_order)
    inners = [gr.inner_automorphism(g, x) for x in range(g.order)]
    pairs = []
    for alpha in autos:
        alpha2 = gr.compose_maps(alpha, alpha)
        for x in range(g.order):
            if alpha[x] == x and inners[x] == alpha2:
                pairs.append((x, alpha))
    return tuple(pairs)


def alg_cayley_witness(
    spec: HaarSpec, max_aut_order: int = gr.DEFAULT_AUT_ORDER_BOUND
) -> Optional[AlgCayleyWitness]:
    """First (g, alpha) with g*S^alpha = S^-1 in deterministic scan order.

    The scan over Aut(G) x G is exhaustive, so None is a proof that no such
    pair exists.
    """
    g = spec.group
    s_inv = frozenset(g.inv(x) for x in spec.s)
    for elem, alpha in _witness_pairs(g, max_aut_order):
        if frozenset(g.mul(elem, alpha[x]) for x in spec.s) == s_inv:
            witness = AlgCayleyWitness(elem, alpha)
            verify_witness(spec, witness)
            return witness
    return None


def verify_witness(spec: HaarSpec, witness: AlgCayleyWitness) -> None:
    """Re-check all three witness conditions; raises InvalidWitnessError."""
    g = spec.group
    alpha = witness.alpha
    if not gr.is_automorphism_map(g, alpha):
        raise InvalidWitnessError("alpha is not an automorphism")
    if alpha[witness.g] != witness.g:
        raise InvalidWitnessError("alpha does not fix g")
    if gr.compose_maps(alpha, alpha) != gr.inner_automorphism(g, witness.g):
        raise InvalidWitnessError("alpha^2 is not the inner automorphism of g")
    left = {g.mul(witness.g, alpha[x]) for x in spec.s}
    if left != {g.inv(x) for x in spec.s}:
        raise InvalidWitnessError("g * S^alpha != S^-1")


def build_sigma(spec: HaarSpec, witness: AlgCayleyWitness) -> SigmaMap:
    """The class-swapping map (x,0) -> (x^alpha,1), (x,1) -> (x^(alpha^-1)*g,0).

    Verified on construction: it is an automorphism of H(G,S), its square is
    the right translation by g, and together with the right translations it
    generates a group acting regularly on the 2|G| vertices.
    """
    verify_witness(spec, witness)
    g = spec.group
    n = g.order
    alpha = witness.alpha
    alpha_inv = gr.invert_map(alpha)
    images = [0] * (2 * n)
    for x in range(n):
        images[x] = n + alpha[x]
        images[n + x] = g.mul(alpha_inv[x], witness.g)
    sigma = tuple(images)
    graph = haar_graph(spec)
    if not graph.is_automorphism(sigma):
        raise VerificationError("sigma is not an automorphism of the Haar graph")
    if multiply(sigma, sigma) != right_translation_perm(g, witness.g):
        raise VerificationError("sigma squared is not the right translation by g")
    overgroup = PermGroup(2 * n, right_translations(g).generators + (sigma,))
    if overgroup.order() != 2 * n or not overgroup.is_regular():
        raise VerificationError("sigma and the right translations are not regular")
    return SigmaMap(sigma, witness.g, alpha)


# ---------------------------------------------------------------------------
# graph-side decisions

def is_vertex_transitive(graph: Graph, max_vertices: int = 1000) -> bool:
    return len(automorphism_group(graph, max_vertices=max_vertices).orbits()) <= 1


@dataclass(frozen=True)
class CayleyOutcome:
    status: str  # "yes" | "no" | "unknown"
    regular_group: Optional[PermGroup]


def is_cayley(
    graph: Graph,
    budget: int = DEFAULT_CAYLEY_BUDGET,
    seed: Optional[PermGroup] = None,
    max_vertices: int = 1000,
) -> CayleyOutcome:
    """Sabidussi test: vertex-transitive plus a regular subgroup of Aut.

    "no" is conclusive; "unknown" means the regular-subgroup search ran out
    of budget.  A semiregular seed (such as the right translations of a Haar
    graph) steers the search towards index-2 overgroups first.
    """
    aut = automorphism_group(graph, max_vertices=max_vertices)
    if len(aut.orbits()) > 1:
        return CayleyOutcome("no", None)
    outcome: SearchOutcome = find_regular_subgroup(
        aut, budget=budget, seeds=(seed,) if seed is not None else ()
    )
    status = {"found": "yes", "none": "no", "unknown": "unknown"}[outcome.status]
    return CayleyOutcome(status, outcome.subgroup)


# ---------------------------------------------------------------------------
# bipartite Cayley graphs as Haar graphs

def haar_from_bipartite_cayley(
    g: gr.FiniteGroup, s: Iterable[int]
) -> tuple[gr.FiniteGroup, tuple[int, ...]]:
    """Rewrite a bipartite Cayley graph as a Haar graph over a half-size group.

    Returns (H, T) with H(H,T) isomorphic to cay(G,S); the isomorphism is
    re-checked before returning.  Connected case: H is the even-word
    subgroup.  Disconnected case: H is (even subgroup of <S>) x Z_m with m
    the component count.
    """
    s = tuple(sorted(set(s)))
    if not s:
        raise InvalidParameterError("empty connection sets are not supported here")
    graph = cayley_graph(g, s)
    class0, _ = bipartition(graph)  # raises NotBipartiteError with a certificate
    k_sub = gr.subgroup_generated(g, s)
    t0 = s[0]
    t0_inv = g.inv(t0)
    if k_sub.order == g.order:
        even = class0 if g.identity in class0 else tuple(
            v for v in range(g.order) if v not in set(class0)
        )
        h_group = gr.subgroup_as_group(g, even)
        pos = {x: i for i, x in enumerate(even)}
        t_set = tuple(sorted(pos[g.mul(t0_inv, x)] for x in s))
    else:
        members = k_sub.members
        kgrp = gr.subgroup_as_group(g, members)
        kpos = {x: i for i, x in enumerate(members)}
        class0_set = set(class0)
        even_in_k = tuple(i for i, x in enumerate(members) if x in class0_set)
        if g.identity not in class0_set:
            even_in_k = tuple(i for i in range(kgrp.order) if i not in set(even_in_k))
        kplus = gr.subgroup_as_group(kgrp, even_in_k)
        m = g.order // k_sub.order
        h_group = gr.build_direct_product(kplus, gr.build_cyclic(m))
        kplus_pos = {even_in_k[i]: i for i in range(len(even_in_k))}
        t_set = tuple(sorted(kplus_pos[kpos[g.mul(t0_inv, x)]] * m for x in s))
    result = haar_graph(HaarSpec(h_group, t_set))
    if is_isomorphic(graph, result) is None:
        raise VerificationError("derived Haar graph is not isomorphic to the Cayley graph")
    return h_group, t_set


# ---------------------------------------------------------------------------
# the nonsplit metacyclic family

def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for d in range(2, int(p**0.5) + 1):
        if p % d == 0:
            return False
    return True


def nonsplit_family_graph(p: int, n: int) -> tuple[Graph, PermGroup]:
    """The graph on Z_2p x Z_p^(n-1) with (i,j) ~ (i+1,j') when i is even
    or j = j', together with its verified regular automorphism group.

    The group is generated by alpha (i,j)->(i,j+1), beta (i,j)->(i+2,j) and
    gamma (i,j)->(-i+1,j); gamma inverts beta and alpha is central.
    """
    if not _is_prime(p) or p % 2 == 0:
        raise InvalidParameterError("p must be an odd prime")
    if n < 2:
        raise InvalidParameterError("n must be at least 2")
    q = p ** (n - 1)
    rows = 2 * p
    size = rows * q

    def vid(i: int, j: int) -> int:
        return (i % rows) * q + (j % q)

    edges = []
    for i in range(rows):
        for j1 in range(q):
            if i % 2 == 0:
                edges.extend((vid(i, j1), vid(i + 1, j2)) for j2 in range(q))
            else:
                edges.append((vid(i, j1), vid(i + 1, j1)))
    labels = [f"({i},{j})" for i in range(rows) for j in range(q)]
    graph = Graph(size, edges, labels)

    alpha = tuple(vid(i, j + 1) for i in range(rows) for j in range(q))
    beta = tuple(vid(i + 2, j) for i in range(rows) for j in range(q))
    gamma = tuple(vid(-i + 1, j) for i in range(rows) for j in range(q))
    for name, perm in (("alpha", alpha), ("beta", beta), ("gamma", gamma)):
        if not graph.is_automorphism(perm):
            raise VerificationError(f"{name} is not an automorphism of the family graph")
    if multiply(multiply(inverse(gamma), beta), gamma) != inverse(beta):
        raise VerificationError("gamma does not invert beta")
    if multiply(alpha, beta) != multiply(beta, alpha) or multiply(alpha, gamma) != multiply(gamma, alpha):
        raise VerificationError("alpha is not central")
    group = PermGroup(size, (alpha, beta, gamma))
    if group.order() != size or not group.is_regular():
        raise VerificationError("family group is not regular")
    return graph, group


def _cyclic_normal_with_cyclic_quotient(g: gr.FiniteGroup) -> list[gr.Subgroup]:
    seen = set()
    out = []
    for x in range(g.order):
        sub = gr.subgroup_generated(g, (x,))
        if sub.members in seen:
            continue
        seen.add(sub.members)
        if not gr.is_normal(g, sub):
            continue
        if gr._quotient_generated_by(g, sub.members, 1):
            out.append(sub)
    return out


def is_nonsplit_metacyclic(g: gr.FiniteGroup) -> bool:
    """Metacyclic (cyclic normal subgroup with cyclic quotient) and no such
    subgroup has a complement."""
    witnesses = _cyclic_normal_with_cyclic_quotient(g)
    if not witnesses:
        return False
    return not any(gr.has_complement(g, sub) for sub in witnesses)


@lru_cache(maxsize=None)
def find_nonsplit_metacyclic(p: int = 3, max_exponent: int = 5) -> gr.FiniteGroup:
    """Smallest nonsplit metacyclic p-group found by scanning presentations.

    Presentations <a,b | a^m = 1, b^s = a^t, b^-1 a b = a^r> with m*s = p^e
    are tried in increasing order of e, then (m, r, t); obviously
    inconsistent parameters are skipped before construction.
    """
    if not _is_prime(p) or p % 2 == 0:
        raise InvalidParameterError("p must be an odd prime")
    for e in range(2, max_exponent + 1):
        total = p**e
        for em in range(e + 1):
            m = p**em
            s = total // m
            for r in range(m):
                if math.gcd(r, m) != 1 or pow(r, s, m) != 1 % m:
                    continue
                for t in range(m):
                    if (t * (r - 1)) % m != 0:
                        continue
                    try:
                        candidate = gr.build_metacyclic(m, r, s, t)
                    except InvalidParameterError:
                        continue
                    if candidate.is_abelian():
                        continue
                    if is_nonsplit_metacyclic(candidate):
                        return candidate
    raise ResourceLimitError(
        f"no nonsplit metacyclic {p}-group of order up to {p}^{max_exponent}"
    )


@dataclass(frozen=True)
class NonsplitReport:
    group_label: str
    group_order: int
    p: int
    n: int
    subset: tuple[int, ...]
    relabeling: tuple[int, ...]
    cayley_certified: bool
    regular_group_order: int
    algebraically_cayley: bool

    def records(self) -> list[dict]:
        return [
            {
                "group": self.group_label,
                "order": self.group_order,
                "p": self.p,
                "n": self.n,
                "subset_size": len(self.subset),
                "cayley": self.cayley_certified,
                "regular_group_order": self.regular_group_order,
                "algebraically_cayley": self.algebraically_cayley,
            }
        ]


def _nonsplit_relabeling(g: gr.FiniteGroup, n_members: tuple[int, ...], x: int) -> tuple[int, ...]:
    """Vertex bijection from H(G, N u {x}) onto the parametrized family graph.

    Columns around the cycle are the left cosets x^-k N on each side; labels
    inside even columns are transported back along the matching edges so
    that every matching joins equal second coordinates.
    """
    n_g = g.order
    q = len(n_members)
    p = n_g // q
    xinv = g.inv(x)
    cosets = [sorted(n_members)]
    for _ in range(p - 1):
        cosets.append(sorted(g.mul(xinv, y) for y in cosets[-1]))
    jlabel_odd: list[dict[int, int]] = []
    for k in range(p):
        jlabel_odd.append({y: j for j, y in enumerate(cosets[k])})
    out = [0] * (2 * n_g)
    for k in range(p):
        for y, j in jlabel_odd[k].items():
            out[n_g + y] = (2 * k + 1) * q + j  # (y,1) in column 2k+1
    for k in range(p):
        for z in cosets[k]:
            partner = g.mul(x, z)  # (z,0) is matched with (x z, 1)
            col = (2 * k - 1) % (2 * p)
            j = jlabel_odd[(k - 1) % p][partner]
            assert out[n_g + partner] == col * q + j
            out[z] = (2 * k) * q + j
    return tuple(out)


def verify_nonsplit_example(
    g: gr.FiniteGroup, n_sub: "gr.Subgroup | Iterable[int]", x: int
) -> NonsplitReport:
    """Check that H(G, N u {x}) is Cayley (explicit regular group transported
    from the parametrized graph) yet admits no (g, alpha) witness."""
    members = gr._members(n_sub)
    if not gr.is_subgroup(g, members):
        raise InvalidParameterError("N is not a subgroup")
    if g.order % len(members) != 0:
        raise InvalidParameterError("N does not divide the group order")
    p = g.order // len(members)
    if not _is_prime(p) or p % 2 == 0:
        raise InvalidParameterError("index of N must be an odd prime")
    if x in set(members):
        raise InvalidParameterError("x must lie outside N")
    exponent = 0
    order = g.order
    while order % p == 0:
        order //= p
        exponent += 1
    if order != 1:
        raise InvalidParameterError("group order is not a power of p")
    if not is_nonsplit_metacyclic(g):
        raise InvalidParameterError("group is not a nonsplit metacyclic p-group")

    spec = HaarSpec(g, members + (x,))
    x_graph = haar_graph(spec)
    family_graph, family_group = nonsplit_family_graph(p, exponent)
    bij = _nonsplit_relabeling(g, members, x)
    if sorted(bij) != list(range(2 * g.order)):
        raise VerificationError("relabeling is not a bijection")
    if x_graph.edge_count != family_graph.edge_count:
        raise VerificationError("edge counts differ")
    for u, v in x_graph.edges():
        if not family_graph.has_edge(bij[u], bij[v]):
            raise VerificationError("relabeling does not preserve edges")
    bij_inv = inverse(bij)
    transported = []
    for perm in family_group.generators:
        moved = tuple(bij_inv[perm[bij[v]]] for v in range(2 * g.order))
        if not x_graph.is_automorphism(moved):
            raise VerificationError("transported generator is not an automorphism")
        transported.append(moved)
    regular = PermGroup(2 * g.order, transported)
    if regular.order() != 2 * g.order or not regular.is_regular():
        raise VerificationError("transported group is not regular")
    witness = alg_cayley_witness(spec, max_aut_order=g.order)
    return NonsplitReport(
        group_label=g.label,
        group_order=g.order,
        p=p,
        n=exponent,
        subset=spec.s,
        relabeling=bij,
        cayley_certified=True,
        regular_group_order=regular.order(),
        algebraically_cayley=witness is not None,
    )


# ---------------------------------------------------------------------------
# quasi-Cayley families

def quasi_cayley_family(spec: HaarSpec, sigma: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """The family G_R u sigma*G_R, verified to map each ordered vertex pair
    exactly once."""
    g = spec.group
    n = g.order
    sigma = tuple(sigma)
    graph = haar_graph(spec)
    if not graph.is_automorphism(sigma):
        raise InvalidParameterError("sigma is not an automorphism of the Haar graph")
    if any(sigma[v] < n for v in range(n)) or any(sigma[v] >= n for v in range(n, 2 * n)):
        raise InvalidParameterError("sigma does not swap the two vertex classes")
    family = [right_translation_perm(g, t) for t in range(n)]
    family += [multiply(sigma, perm) for perm in family[:n]]
    size = 2 * n
    hits = [[0] * size for _ in range(size)]
    for perm in family:
        for u in range(size):
            hits[u][perm[u]] += 1
    if any(hits[u][v] != 1 for u in range(size) for v in range(size)):
        raise VerificationError("family does not map each vertex pair exactly once")
    return tuple(family)
