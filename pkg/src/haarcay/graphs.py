"""Undirected simple graphs with automorphism and isomorphism search.

The search is individualization plus iterated neighbour-colour refinement.
Refinement only guides the backtracking: every candidate map is verified
edge by edge before it is reported, so correctness never depends on the
colour invariant.
"""
from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .errors import InvalidParameterError, NotBipartiteError, ResourceLimitError
from .perms import PermGroup, identity_perm, is_identity

DEFAULT_VERTEX_BOUND = 1000


class Graph:
    """Immutable graph on vertices 0..n-1 with bit-set adjacency."""

    __slots__ = ("n", "_mask", "_nbrs", "labels")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (),
                 labels: Optional[Sequence[str]] = None):
        if n < 0:
            raise InvalidParameterError("vertex count must be non-negative")
        mask = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameterError(f"edge ({u},{v}) out of range")
            if u == v:
                raise InvalidParameterError(f"loop at vertex {u}")
            mask[u] |= 1 << v
            mask[v] |= 1 << u
        self.n = n
        self._mask = tuple(mask)
        self._nbrs = tuple(
            tuple(v for v in range(n) if mask[u] >> v & 1) for u in range(n)
        )
        self.labels = tuple(labels) if labels is not None else None

    def __reduce__(self):
        return (Graph, (self.n, tuple(self.edges()), self.labels))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._mask[u] >> v & 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._nbrs[v]

    def degree(self, v: int) -> int:
        return len(self._nbrs[v])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(nb) for nb in self._nbrs)

    def edges(self):
        for u in range(self.n):
            for v in self._nbrs[u]:
                if u < v:
                    yield (u, v)

    @property
    def edge_count(self) -> int:
        return sum(len(nb) for nb in self._nbrs) // 2

    def is_automorphism(self, p: Sequence[int]) -> bool:
        """Exact edge-preservation check for a vertex bijection."""
        if len(p) != self.n or sorted(p) != list(range(self.n)):
            return False
        return all(self.has_edge(p[u], p[v]) for u, v in self.edges())

    def relabeled(self, p: Sequence[int]) -> "Graph":
        """The image graph under vertex map v -> p[v]."""
        labels = None
        if self.labels is not None:
            labels = [""] * self.n
            for v in range(self.n):
                labels[p[v]] = self.labels[v]
        return Graph(self.n, [(p[u], p[v]) for u, v in self.edges()], labels)


# ---------------------------------------------------------------------------
# refinement machinery

def _normalize(colors: Sequence[int]) -> tuple[int, ...]:
    rank = {c: i for i, c in enumerate(sorted(set(colors)))}
    return tuple(rank[c] for c in colors)


def _refine(nbrs: Sequence[Sequence[int]], colors: tuple[int, ...]) -> tuple[int, ...]:
    """Iterate neighbour-colour signatures to a stable canonical colouring."""
    n = len(colors)
    colors = _normalize(colors)
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[w] for w in nbrs[v])))
            for v in range(n)
        ]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = tuple(rank[s] for s in sigs)
        if new == colors:
            return colors
        colors = new


def _histogram(colors: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    counts: dict[int, int] = {}
    for c in colors:
        counts[c] = counts.get(c, 0) + 1
    return tuple(sorted(counts.items()))


def _cells(colors: tuple[int, ...]) -> dict[int, list[int]]:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    return cells


def _target_cell(colors: tuple[int, ...]) -> Optional[list[int]]:
    """First smallest non-singleton cell (by size, then colour)."""
    best = None
    for c, members in sorted(_cells(colors).items()):
        if len(members) < 2:
            continue
        if best is None or len(members) < len(best):
            best = members
    return best


def _individualized(colors: tuple[int, ...], v: int) -> tuple[int, ...]:
    out = list(colors)
    out[v] = len(colors)  # fresh colour, larger than every canonical rank
    return tuple(out)


def automorphism_group(graph: Graph, coloring: Optional[Sequence[int]] = None,
                       max_vertices: int = DEFAULT_VERTEX_BOUND) -> PermGroup:
    """Generators of the (colour-preserving) automorphism group.

    Backtracking over individualized refinements; the first leaf fixes a base
    ordering, later leaves propose candidate maps.  Siblings of base-path
    nodes are pruned by the orbits of the generators found so far, and a
    subtree is abandoned as soon as it contributes one automorphism.
    """
    n = graph.n
    if n > max_vertices:
        raise ResourceLimitError(f"automorphism search limited to {max_vertices} vertices")
    if coloring is not None and len(coloring) != n:
        raise InvalidParameterError("coloring length must equal the vertex count")
    if n == 0:
        return PermGroup(0, ())
    nbrs = graph._nbrs
    init = _normalize(coloring if coloring is not None else (0,) * n)

    gens: list[tuple[int, ...]] = []
    base_leaf: list[Optional[tuple[int, ...]]] = [None]
    base_hist: list[tuple] = []

    def leaf_order(colors: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(sorted(range(n), key=lambda v: colors[v]))

    def in_known_orbit(v: int, w: int) -> bool:
        seen = {v}
        frontier = [v]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = g[x]
                    if y not in seen:
                        if y == w:
                            return True
                        seen.add(y)
                        new.append(y)
            frontier = new
        return w in seen

    def recurse(colors: tuple[int, ...], depth: int, on_base: bool) -> bool:
        colors = _refine(nbrs, colors)
        hist = _histogram(colors)
        if on_base:
            base_hist.append(hist)
        elif depth >= len(base_hist) or hist != base_hist[depth]:
            return False
        cell = _target_cell(colors)
        if cell is None:  # discrete colouring
            leaf = leaf_order(colors)
            if base_leaf[0] is None:
                base_leaf[0] = leaf
                return False
            p = [0] * n
            for a, b in zip(base_leaf[0], leaf):
                p[a] = b
            p = tuple(p)
            if is_identity(p):
                return False
            if all(init[p[v]] == init[v] for v in range(n)) and graph.is_automorphism(p):
                gens.append(p)
                return True
            return False
        if on_base:
            v_base = cell[0]
            recurse(_individualized(colors, v_base), depth + 1, True)
            for v in cell[1:]:
                if in_known_orbit(v_base, v):
                    continue
                recurse(_individualized(colors, v), depth + 1, False)
            return False
        for v in cell:
            if recurse(_individualized(colors, v), depth + 1, False):
                return True
        return False

    recurse(init, 0, True)
    for p in gens:
        if not graph.is_automorphism(p):
            raise AssertionError("search produced a non-automorphism")
    return PermGroup(n, tuple(gens))


def is_isomorphic(x: Graph, y: Graph) -> Optional[tuple[int, ...]]:
    """A verified vertex bijection x -> y, or None.

    Works on the disjoint union: both sides share one colour space, and each
    individualization pairs a left vertex with a candidate right vertex.
    """
    n = x.n
    if n != y.n or x.edge_count != y.edge_count:
        return None
    if sorted(x.degrees()) != sorted(y.degrees()):
        return None
    if n == 0:
        return ()
    nbrs = list(x._nbrs) + [tuple(w + n for w in nb) for nb in y._nbrs]

    def recurse(colors: tuple[int, ...]) -> Optional[tuple[int, ...]]:
        colors = _refine(nbrs, colors)
        cells = _cells(colors)
        pair_cells = []
        for c, members in sorted(cells.items()):
            left = [v for v in members if v < n]
            if 2 * len(left) != len(members):
                return None  # side-unbalanced colour class
            if len(members) > 2:
                pair_cells.append(members)
        if not pair_cells:
            mapping = [0] * n
            for members in cells.values():
                u, v = members
                mapping[u] = v - n
            return tuple(mapping)
        members = min(pair_cells, key=len)
        v = next(u for u in members if u < n)
        for u in members:
            if u < n:
                continue
            out = list(colors)
            out[v] = out[u] = len(colors)
            result = recurse(tuple(out))
            if result is not None:
                return result
        return None

    mapping = recurse((0,) * (2 * n))
    if mapping is None:
        return None
    if sorted(mapping) != list(range(n)):
        raise AssertionError("isomorphism search produced a non-bijection")
    for u, v in x.edges():
        if not y.has_edge(mapping[u], mapping[v]):
            raise AssertionError("isomorphism search produced a non-isomorphism")
    return mapping


# ---------------------------------------------------------------------------
# elementary structure

def connected_components(graph: Graph) -> tuple[tuple[int, ...], ...]:
    seen: set[int] = set()
    comps = []
    for start in range(graph.n):
        if start in seen:
            continue
        comp = {start}
        frontier = [start]
        while frontier:
            new = []
            for u in frontier:
                for w in graph.neighbors(u):
                    if w not in comp:
                        comp.add(w)
                        new.append(w)
            frontier = new
        seen.update(comp)
        comps.append(tuple(sorted(comp)))
    return tuple(comps)


def is_connected(graph: Graph) -> tuple[bool, tuple[tuple[int, ...], ...]]:
    comps = connected_components(graph)
    return len(comps) <= 1, comps


def bipartition(graph: Graph) -> tuple[tuple[int, ...], ...]:
    """Two colour classes (lowest vertex of each component in class 0).

    Raises NotBipartiteError carrying an odd cycle when none exists.
    """
    n = graph.n
    color = [-1] * n
    parent = [-1] * n
    for start in range(n):
        if color[start] != -1:
            continue
        color[start] = 0
        frontier = [start]
        while frontier:
            new = []
            for u in frontier:
                for w in graph.neighbors(u):
                    if color[w] == -1:
                        color[w] = 1 - color[u]
                        parent[w] = u
                        new.append(w)
                    elif color[w] == color[u]:
                        raise NotBipartiteError(_odd_cycle(parent, u, w))
            frontier = new
    class0 = tuple(v for v in range(n) if color[v] == 0)
    class1 = tuple(v for v in range(n) if color[v] == 1)
    return class0, class1


def _odd_cycle(parent: Sequence[int], u: int, w: int) -> tuple[int, ...]:
    path_u = [u]
    while parent[path_u[-1]] != -1:
        path_u.append(parent[path_u[-1]])
    path_w = [w]
    while parent[path_w[-1]] != -1:
        path_w.append(parent[path_w[-1]])
    ancestors_u = {v: i for i, v in enumerate(path_u)}
    for j, v in enumerate(path_w):
        if v in ancestors_u:
            i = ancestors_u[v]
            return tuple(path_u[:i] + [v] + list(reversed(path_w[:j])))
    raise AssertionError("conflicting vertices share no root")


# ---------------------------------------------------------------------------
# graph6 and DOT

def to_graph6(graph: Graph) -> str:
    """Standard graph6 encoding (long forms for 63 <= n < 2^36 included)."""
    n = graph.n
    if n > 68719476735:
        raise InvalidParameterError("graph too large for graph6")
    if n <= 62:
        head = [n + 63]
    elif n <= 258047:
        head = [126] + [((n >> k) & 63) + 63 for k in (12, 6, 0)]
    else:
        head = [126, 126] + [((n >> k) & 63) + 63 for k in (30, 24, 18, 12, 6, 0)]
    bits = []
    for j in range(1, n):
        mask = graph._mask[j]
        for i in range(j):
            bits.append(mask >> i & 1)
    while len(bits) % 6:
        bits.append(0)
    body = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = val << 1 | b
        body.append(val + 63)
    return "".join(map(chr, head + body))


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):].strip()
    data = [ord(ch) - 63 for ch in s]
    if any(not 0 <= v <= 63 for v in data):
        raise InvalidParameterError("invalid graph6 character")
    if not data:
        raise InvalidParameterError("empty graph6 string")
    if data[0] != 63:
        n, data = data[0], data[1:]
    elif len(data) >= 2 and data[1] != 63:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        data = data[4:]
    else:
        n = 0
        for v in data[2:8]:
            n = n << 6 | v
        data = data[8:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(data) != need:
        raise InvalidParameterError(f"graph6 body has {len(data)} bytes, expected {need}")
    bits = []
    for v in data:
        for k in (5, 4, 3, 2, 1, 0):
            bits.append(v >> k & 1)
    edges = []
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                edges.append((i, j))
            pos += 1
    return Graph(n, edges)


def to_dot(graph: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(graph.n):
        label = graph.labels[v] if graph.labels else str(v)
        lines.append(f'  {v} [label="{label}"];')
    for u, v in graph.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
