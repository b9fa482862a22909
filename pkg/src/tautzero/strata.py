"""Stable graphs of genus g with n markings and the 0-cycle degree count.

Graphs are generated by degenerating the smooth graph one node at a time:
every stable graph with an edge contracts to a stable graph with one edge
fewer, so a breadth-first search over degenerations reaches all of them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product


class StrataError(ValueError):
    pass


class UnstablePair(StrataError):
    pass


class InvalidGraph(StrataError):
    pass


@dataclass(frozen=True, order=True)
class StableGraph:
    """Vertices carry a genus and a set of leg labels; edges are unordered
    vertex pairs (a loop is ``(v, v)``), stored sorted."""

    genera: tuple[int, ...]
    legs: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def build(cls, genera, legs, edges) -> "StableGraph":
        return cls(
            tuple(genera),
            tuple(tuple(sorted(l)) for l in legs),
            tuple(sorted(tuple(sorted(e)) for e in edges)),
        )

    @property
    def num_vertices(self) -> int:
        return len(self.genera)

    def valence(self, v: int) -> int:
        """n(v): legs plus half-edges at ``v``; loops count twice."""
        n = len(self.legs[v])
        for i, j in self.edges:
            n += (i == v) + (j == v)
        return n

    def valences(self) -> tuple[int, ...]:
        n = [len(l) for l in self.legs]
        for i, j in self.edges:
            n[i] += 1
            n[j] += 1
        return tuple(n)

    def loops(self, v: int) -> int:
        return sum(1 for i, j in self.edges if i == j == v)

    @property
    def genus(self) -> int:
        return sum(self.genera) + len(self.edges) - self.num_vertices + 1

    @property
    def markings(self) -> tuple[int, ...]:
        return tuple(sorted(x for l in self.legs for x in l))

    def is_connected(self) -> bool:
        if not self.genera:
            return False
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for i, j in self.edges:
                for a, b in ((i, j), (j, i)):
                    if a == v and b not in seen:
                        seen.add(b)
                        stack.append(b)
        return len(seen) == self.num_vertices

    def check(self, g: int | None = None, n: int | None = None) -> None:
        for i, j in self.edges:
            if not (0 <= i <= j < self.num_vertices):
                raise InvalidGraph(f"bad edge {(i, j)}")
        for v, (h, val) in enumerate(zip(self.genera, self.valences())):
            if h < 0:
                raise InvalidGraph(f"vertex {v} has negative genus")
            if 2 * h - 2 + val <= 0:
                raise InvalidGraph(f"vertex {v} is unstable")
        if not self.is_connected():
            raise InvalidGraph("graph is disconnected")
        marks = self.markings
        if len(set(marks)) != len(marks):
            raise InvalidGraph("repeated marking label")
        if g is not None and self.genus != g:
            raise InvalidGraph(f"total genus {self.genus} != {g}")
        if n is not None and marks != tuple(range(1, n + 1)):
            raise InvalidGraph(f"markings {marks} do not partition 1..{n}")

    def canonical(self) -> "StableGraph":
        return _canonical(self)

    def as_dict(self) -> dict:
        return {
            "genera": list(self.genera),
            "legs": [list(l) for l in self.legs],
            "edges": [list(e) for e in self.edges],
        }

    def __str__(self) -> str:
        verts = " ".join(
            f"v{v}(g{h}" + (":" + ",".join(map(str, l)) if l else "") + ")"
            for v, (h, l) in enumerate(zip(self.genera, self.legs)))
        edges = " ".join(f"{i}-{j}" for i, j in self.edges)
        return f"[{verts} | {edges}]" if edges else f"[{verts}]"


def _refined_colors(genera, tags, edges) -> list[int]:
    """Colour refinement seeded by (genus, tag, valence, loops).

    ``tags[v]`` is either the leg tuple or, for skeletons, the leg count.
    """
    nv = len(genera)
    half = [0] * nv
    loops = [0] * nv
    adj = [dict() for _ in range(nv)]
    for i, j in edges:
        half[i] += 1
        half[j] += 1
        if i == j:
            loops[i] += 1
        else:
            adj[i][j] = adj[i].get(j, 0) + 1
            adj[j][i] = adj[j].get(i, 0) + 1
    keys = [(genera[v], tags[v], half[v], loops[v]) for v in range(nv)]
    ranks = {k: r for r, k in enumerate(sorted(set(keys)))}
    colors = [ranks[k] for k in keys]
    ncol = len(ranks)
    while ncol < nv:
        sigs = []
        for v in range(nv):
            nb = {}
            for u, mult in adj[v].items():
                nb[colors[u], mult] = nb.get((colors[u], mult), 0) + 1
            sigs.append((colors[v], tuple(sorted(nb.items()))))
        ranks = {s: r for r, s in enumerate(sorted(set(sigs)))}
        if len(ranks) == ncol:
            break
        colors = [ranks[s] for s in sigs]
        ncol = len(ranks)
    return colors


def _canonical_orders(genera, tags, edges):
    """Minimal relabelled edge list and every vertex order achieving it.

    Orders list old vertex indices in their new positions and respect the
    refined colour classes, so genera and tags come out in a fixed order.
    """
    colors = _refined_colors(genera, tags, edges)
    classes = {}
    for v, c in enumerate(colors):
        classes.setdefault(c, []).append(v)
    blocks = [classes[c] for c in sorted(classes)]
    best = None
    orders = []
    pos = [0] * len(genera)
    for choice in product(*(permutations(b) for b in blocks)):
        order = [v for block in choice for v in block]
        for new, old in enumerate(order):
            pos[old] = new
        E = tuple(sorted((pos[i], pos[j]) if pos[i] <= pos[j] else (pos[j], pos[i])
                         for i, j in edges))
        if best is None or E < best:
            best = E
            orders = [order]
        elif E == best:
            orders.append(order)
    return best, orders


def _from_assignment(genera, edges, assignment) -> StableGraph:
    legs = [[] for _ in genera]
    for label, v in enumerate(assignment, start=1):
        legs[v].append(label)
    return StableGraph(tuple(genera), tuple(tuple(l) for l in legs), edges)


def _canonical(G: StableGraph) -> StableGraph:
    """Canonical skeleton plus the least leg assignment over all
    isomorphisms onto it; a complete isomorphism invariant."""
    counts = tuple(len(l) for l in G.legs)
    edges, orders = _canonical_orders(G.genera, counts, G.edges)
    owner = {x: v for v, l in enumerate(G.legs) for x in l}
    labels = sorted(owner)
    if labels != list(range(1, len(labels) + 1)):
        raise InvalidGraph(f"markings {labels} are not 1..{len(labels)}")
    best = None
    for order in orders:
        pos = {old: new for new, old in enumerate(order)}
        a = tuple(pos[owner[x]] for x in labels)
        if best is None or a < best:
            best = a
    order = orders[0]
    return _from_assignment([G.genera[v] for v in order], edges, best or ())


# A skeleton is a stable graph whose legs are unlabelled: (genera, leg
# counts, edges) as plain tuples.

def _skeleton_canonical(genera, counts, edges):
    E, orders = _canonical_orders(genera, counts, edges)
    order = orders[0]
    return tuple(genera[v] for v in order), tuple(counts[v] for v in order), E


def _skeleton_degenerations(genera, counts, edges):
    nv = len(genera)
    for v in range(nv):
        h = genera[v]
        if h > 0:
            yield (genera[:v] + (h - 1,) + genera[v + 1:], counts, edges + ((v, v),))
        ends = []
        for idx, (i, j) in enumerate(edges):
            if i == v:
                ends.append((idx, 0))
            if j == v:
                ends.append((idx, 1))
        L = counts[v]
        m = len(ends)
        # both halves of a split are interchangeable: keep end 0 on v, or
        # with no ends, move at most half of the legs
        for mask in range(0, 1 << m, 2 if m else 1):
            moved = [ends[t] for t in range(m) if mask >> t & 1]
            for moved_legs in range(L + 1 if m else L // 2 + 1):
                moved_n = len(moved) + moved_legs + 1
                kept_n = m + L + 2 - moved_n
                for h2 in range(h + 1):
                    h1 = h - h2
                    if not m and 2 * moved_legs == L and h2 > h1:
                        continue
                    if 2 * h1 - 2 + kept_n <= 0 or 2 * h2 - 2 + moved_n <= 0:
                        continue
                    new_edges = [list(e) for e in edges]
                    for idx, side in moved:
                        new_edges[idx][side] = nv
                    new_edges.append([v, nv])
                    yield (
                        genera[:v] + (h1,) + genera[v + 1:] + (h2,),
                        counts[:v] + (L - moved_legs,) + counts[v + 1:] + (moved_legs,),
                        tuple(tuple(e) for e in new_edges),
                    )


def _skeletons(g: int, n: int) -> list:
    layer = [((g,), (n,), ())]
    out = list(layer)
    while layer:
        seen = set()
        raw = set()
        for S in layer:
            for T in _skeleton_degenerations(*S):
                if T not in raw:
                    raw.add(T)
                    seen.add(_skeleton_canonical(*T))
        layer = sorted(seen)
        out.extend(layer)
    return out


def _leg_assignments(counts, n):
    """All maps from labels 1..n to vertices with prescribed fibre sizes."""
    slots = [v for v, c in enumerate(counts) for _ in range(c)]
    remaining = {v: counts[v] for v in range(len(counts)) if counts[v]}
    assignment = [0] * n

    def rec(i):
        if i == n:
            yield tuple(assignment)
            return
        for v in sorted(remaining):
            if remaining[v]:
                remaining[v] -= 1
                assignment[i] = v
                yield from rec(i + 1)
                remaining[v] += 1

    if len(slots) != n:
        raise AssertionError("leg counts do not sum to n")
    yield from rec(0)


def _labelings(skeleton, n: int):
    genera, counts, edges = skeleton
    _, orders = _canonical_orders(genera, counts, edges)
    # skeleton is canonical, so each optimal order is an automorphism
    autos = [order for order in orders if list(order) != sorted(order)]
    for a in _leg_assignments(counts, n):
        if any(tuple(sigma[v] for v in a) < a for sigma in autos):
            continue
        yield _from_assignment(genera, edges, a)


def smooth_graph(g: int, n: int) -> StableGraph:
    return StableGraph.build([g], [range(1, n + 1)], [])


def enumerate_stable_graphs(g: int, n: int) -> list[StableGraph]:
    """One canonical representative per isomorphism class.

    Ordered by number of edges, then by canonical encoding.

    >>> [len(enumerate_stable_graphs(*p)) for p in [(0, 4), (1, 1), (2, 0)]]
    [4, 2, 7]
    """
    if g < 0 or n < 0:
        raise UnstablePair(f"negative genus or marking count ({g}, {n})")
    if 2 * g - 2 + n <= 0:
        raise UnstablePair(f"2g - 2 + n = {2 * g - 2 + n} <= 0 for (g, n) = ({g}, {n})")
    graphs = [G for S in _skeletons(g, n) for G in _labelings(S, n)]
    graphs.sort(key=lambda G: (len(G.edges), G))
    return graphs


def stratum_dimension(G: StableGraph) -> int:
    return sum(3 * h - 3 + val for h, val in zip(G.genera, G.valences()))


def vertex_budget(genus: int, valence: int) -> int:
    """Largest decoration degree allowed at a vertex by Getzler-Ionel vanishing.

    Genus zero vertices are unconstrained (budget = dimension n - 3); positive
    genus vertices obey ``deg < g(v) - [n(v) == 0]``.
    """
    dim = 3 * genus - 3 + valence
    if genus == 0:
        return dim
    return min(dim, genus - (valence == 0) - 1)


def graph_budget(G: StableGraph) -> int:
    return sum(vertex_budget(h, val) for h, val in zip(G.genera, G.valences()))


def zero_cycle_feasible_with_positive_genus(G: StableGraph) -> bool:
    if not any(h > 0 for h in G.genera):
        return False
    return graph_budget(G) >= stratum_dimension(G)


@dataclass
class SpanningReport:
    g: int
    n: int
    rows: list = field(default_factory=list)
    strict_budget_failures: list = field(default_factory=list)

    @property
    def num_graphs(self) -> int:
        return len(self.rows)

    @property
    def feasible(self) -> list:
        return [r for r in self.rows if r["feasible"]]

    @property
    def passed(self) -> bool:
        return not self.feasible and not self.strict_budget_failures

    def as_dict(self) -> dict:
        return {
            "g": self.g,
            "n": self.n,
            "num_graphs": self.num_graphs,
            "passed": self.passed,
            "feasible_graphs": len(self.feasible),
            "strict_budget_failures": self.strict_budget_failures,
            "graphs": self.rows,
        }


def verify_r0_spanning(g: int, n: int) -> SpanningReport:
    """Check that no stratum with a positive genus vertex carries a 0-cycle
    generator compatible with the vertex degree budgets."""
    report = SpanningReport(g, n)
    for G in enumerate_stable_graphs(g, n):
        G.check(g, n)
        for v, (h, val) in enumerate(zip(G.genera, G.valences())):
            if h > 0 and not vertex_budget(h, val) < 3 * h - 3 + val:
                report.strict_budget_failures.append({"graph": str(G), "vertex": v})
        report.rows.append({
            "graph": str(G),
            "dimension": stratum_dimension(G),
            "budget": graph_budget(G),
            "positive_genus": any(h > 0 for h in G.genera),
            "feasible": zero_cycle_feasible_with_positive_genus(G),
        })
    return report
