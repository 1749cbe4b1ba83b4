"""Graphs: generators, planarity, 3-trees, subgraph search, obstructions."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterable, Sequence

import networkx as nx


class GraphFormatError(ValueError):
    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class PatternTooLarge(ValueError):
    pass


class Graph:
    """Simple undirected graph on vertices 0..n-1 with optional labels."""

    __slots__ = ("n", "adj", "labels")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), labels: Sequence[Hashable] | None = None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.adj = tuple(frozenset(a) for a in adj)
        if labels is not None and len(labels) != n:
            raise ValueError("need one label per vertex")
        self.labels = tuple(labels) if labels is not None else tuple(range(n))

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def index(self, label) -> int:
        return self.labels.index(label)

    def labelled_edges(self) -> set[frozenset]:
        return {frozenset((self.labels[u], self.labels[v])) for u, v in self.edges()}

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # derived graphs

    def with_edges(self, extra) -> "Graph":
        return Graph(self.n, self.edges() + list(extra), self.labels)

    def without_edges(self, drop) -> "Graph":
        gone = {frozenset(e) for e in drop}
        return Graph(self.n, [e for e in self.edges() if frozenset(e) not in gone], self.labels)

    def induced(self, keep: Sequence[int]) -> "Graph":
        pos = {v: i for i, v in enumerate(keep)}
        edges = [(pos[u], pos[v]) for u, v in self.edges() if u in pos and v in pos]
        return Graph(len(keep), edges, [self.labels[v] for v in keep])

    def relabelled(self, labels) -> "Graph":
        return Graph(self.n, self.edges(), labels)

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(range(self.n))
        G.add_edges_from(self.edges())
        return G

    @classmethod
    def from_networkx(cls, G: nx.Graph) -> "Graph":
        nodes = list(G.nodes())
        pos = {v: i for i, v in enumerate(nodes)}
        return cls(len(nodes), [(pos[u], pos[v]) for u, v in G.edges()], nodes)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            for w in self.adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp, stack = [], [s]
            seen[s] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def is_bipartite(self) -> bool:
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] >= 0:
                continue
            color[s] = 0
            stack = [s]
            while stack:
                v = stack.pop()
                for w in self.adj[v]:
                    if color[w] < 0:
                        color[w] = 1 - color[v]
                        stack.append(w)
                    elif color[w] == color[v]:
                        return False
        return True


# --- text format ------------------------------------------------------------


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Header ``n m`` then m lines ``u v`` (0-based); ``#`` starts a comment."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            rows.append((lineno, body.split()))
    if not rows:
        raise GraphFormatError("missing header line 'n m'")
    lineno, head = rows[0]
    if len(head) != 2:
        raise GraphFormatError("header must be 'n m'", lineno)
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise GraphFormatError("header values must be integers", lineno) from None
    if n < 0 or m < 0:
        raise GraphFormatError("negative count in header", lineno)
    if len(rows) - 1 != m:
        raise GraphFormatError(f"header promises {m} edges, found {len(rows) - 1}", lineno)
    edges, seen = [], set()
    for lineno, parts in rows[1:]:
        if len(parts) != 2:
            raise GraphFormatError("edge line must be 'u v'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError("edge endpoints must be integers", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"endpoint out of range 0..{n - 1}", lineno)
        if u == v:
            raise GraphFormatError("loops are not allowed", lineno)
        key = frozenset((u, v))
        if key in seen:
            raise GraphFormatError("repeated edge", lineno)
        seen.add(key)
        edges.append((u, v))
    return Graph(n, edges)


# --- generators -------------------------------------------------------------


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("n >= 1 required")
    return Graph(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError("both parts need at least one vertex")
    labels = [f"a{i}" for i in range(a)] + [f"b{j}" for j in range(b)]
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)], labels)


def hypercube(d: int) -> Graph:
    """Vertices are d-bit labels; edges join labels at Hamming distance one."""
    if d < 0:
        raise ValueError("d >= 0 required")
    n = 1 << d
    edges = [(v, v ^ (1 << i)) for v in range(n) for i in range(d) if v < v ^ (1 << i)]
    labels = [format(v, f"0{d}b") if d else "" for v in range(n)]
    return Graph(n, edges, labels)


def cycle(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def gnp(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    return Graph(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def subdivide_graph(g: Graph, k: int = 1) -> Graph:
    """Replace every edge by a path with k internal vertices."""
    if k < 1:
        raise ValueError("k >= 1 required")
    labels = list(g.labels)
    edges = []
    nxt = g.n
    for u, v in g.edges():
        chain = [u] + list(range(nxt, nxt + k)) + [v]
        labels += [("sub", g.labels[u], g.labels[v], i) for i in range(k)]
        nxt += k
        edges += list(zip(chain, chain[1:]))
    return Graph(nxt, edges, labels)


def triple_stacked_triangle() -> Graph:
    """K3,3 plus a triangle on the gray part: grays 0-2, colored 3-5."""
    grays = [(0, 1), (1, 2), (0, 2)]
    spokes = [(g, c) for g in range(3) for c in range(3, 6)]
    return Graph(6, grays + spokes, ["gray0", "gray1", "gray2", "red", "green", "blue"])


def random_three_tree(n: int, seed: int, with_sequence: bool = False):
    """Stack n-4 vertices on uniformly random triangles, starting from K4.

    Triangles live in a list: K4's four triangles in lexicographic order,
    then for each stacked vertex x on (a, b, c) the triangles (a, b, x),
    (a, c, x), (b, c, x) are appended.  Each step draws
    ``random.Random(seed).randrange(len(list))``.
    """
    if n < 4:
        raise ValueError("a 3-tree has at least four vertices")
    rng = random.Random(seed)
    edges = list(combinations(range(4), 2))
    triangles = list(combinations(range(4), 3))
    steps = []
    for x in range(4, n):
        a, b, c = triangles[rng.randrange(len(triangles))]
        edges += [(a, x), (b, x), (c, x)]
        triangles += [(a, b, x), (a, c, x), (b, c, x)]
        steps.append((x, (a, b, c)))
    g = Graph(n, edges)
    return (g, steps) if with_sequence else g


def random_planar(n: int, seed: int, keep: float | None = None) -> Graph:
    """Random planar graph: a stacked triangulation with random edges removed."""
    rng = random.Random(seed)
    if n <= 3:
        return Graph(n, [e for e in combinations(range(n), 2) if rng.random() < 0.7])
    edges = {(0, 1), (1, 2), (0, 2)}
    faces = [(0, 1, 2), (0, 1, 2)]
    for x in range(3, n):
        i = rng.randrange(len(faces))
        a, b, c = faces.pop(i)
        edges |= {(a, x), (b, x), (c, x)}
        faces += [(a, b, x), (b, c, x), (a, c, x)]
    if keep is None:
        keep = rng.choice([0.35, 0.6, 0.85, 1.0])
    kept = [e for e in sorted(edges) if rng.random() < keep]
    perm = list(range(n))
    rng.shuffle(perm)
    return Graph(n, [(perm[u], perm[v]) for u, v in kept])


# --- planarity ---------------------------------------------------------------


def is_planar(g: Graph) -> bool:
    return nx.check_planarity(g.to_networkx())[0]


def planar_embedding(g: Graph):
    ok, emb = nx.check_planarity(g.to_networkx())
    if not ok:
        raise ValueError("graph is not planar")
    return emb


# --- 3-trees ----------------------------------------------------------------


def is_three_tree(g: Graph):
    """Construction sequence [(x, (u, v, w)), ...] if g is a 3-tree, else None.

    Repeatedly deletes a degree-3 vertex whose neighbours form a triangle;
    the steps come back in construction order (the K4 base is implicit).
    """
    if g.n < 4 or g.m != 3 * g.n - 6:
        return None
    adj = [set(a) for a in g.adj]
    alive = set(range(g.n))

    def simplicial3(v):
        if len(adj[v]) != 3:
            return False
        a, b, c = adj[v]
        return b in adj[a] and c in adj[a] and c in adj[b]

    stack = [v for v in range(g.n) if simplicial3(v)]
    removed = []
    while len(alive) > 4 and stack:
        v = stack.pop()
        if v not in alive or not simplicial3(v):
            continue
        nbrs = tuple(sorted(adj[v]))
        removed.append((v, nbrs))
        alive.discard(v)
        for w in nbrs:
            adj[w].discard(v)
        adj[v] = set()
        stack += [w for w in nbrs if simplicial3(w)]
    if len(alive) != 4:
        return None
    if any(len(adj[v]) != 3 for v in alive):
        return None
    return removed[::-1]


# --- subgraph search -------------------------------------------------------------


def _match_order(pattern: Graph) -> list[int]:
    order = []
    left = set(range(pattern.n))
    while left:
        start = max(left, key=lambda v: (pattern.degree(v), -v))
        order.append(start)
        left.discard(start)
        while True:
            frontier = [v for v in left if pattern.adj[v] & set(order)]
            if not frontier:
                break
            nxt = max(frontier, key=lambda v: (len(pattern.adj[v] & set(order)), pattern.degree(v), -v))
            order.append(nxt)
            left.discard(nxt)
    return order


def find_monomorphism(host: Graph, pattern: Graph) -> dict | None:
    """Injective map pattern -> host keeping every pattern edge (not induced)."""
    if pattern.n > host.n or pattern.m > host.m:
        return None
    order = _match_order(pattern)
    placed: dict[int, int] = {}
    used = set()
    host_deg = host.degrees()

    def candidates(p):
        mapped = [placed[q] for q in pattern.adj[p] if q in placed]
        if mapped:
            pool = set(host.adj[mapped[0]])
            for h in mapped[1:]:
                pool &= host.adj[h]
        else:
            pool = range(host.n)
        need = pattern.degree(p)
        return [h for h in sorted(pool) if h not in used and host_deg[h] >= need]

    def extend(i):
        if i == len(order):
            return True
        p = order[i]
        for h in candidates(p):
            placed[p] = h
            used.add(h)
            if extend(i + 1):
                return True
            del placed[p]
            used.discard(h)
        return False

    return dict(placed) if extend(0) else None


def _as_k5t(pattern: Graph):
    degs = sorted(pattern.degrees())
    if pattern.n < 6:
        return None
    t = pattern.n - 5
    if pattern.m != 5 * t or not pattern.is_bipartite():
        return None
    if degs.count(t) < 5 or degs.count(5) < t:
        return None
    big = [v for v in range(pattern.n) if pattern.degree(v) == t]
    if t == 5:
        big = big[:5]
        if any(pattern.has_edge(a, b) for a, b in combinations(big, 2)):
            return None
    return t


def contains_subgraph(host: Graph, pattern: Graph, max_pattern: int = 10):
    """Witness {pattern vertex: host vertex} or None.

    Patterns above ``max_pattern`` vertices are refused unless they are K5,t,
    which is answered by common-neighbourhood enumeration.
    """
    if pattern.n > max_pattern:
        t = _as_k5t(pattern)
        if t is None:
            raise PatternTooLarge(f"pattern has {pattern.n} vertices (limit {max_pattern})")
        hit = contains_k5t(host, t)
        if hit is None:
            return None
        five, common = hit
        big = [v for v in range(pattern.n) if pattern.degree(v) == t][:5]
        small = [v for v in range(pattern.n) if v not in big]
        return dict(zip(big + small, list(five) + list(common)))
    return find_monomorphism(host, pattern)


def contains_k5t(host: Graph, t: int):
    """(five vertices, t common neighbours) or None."""
    if t < 1:
        raise ValueError("t >= 1 required")
    cands = [v for v in range(host.n) if host.degree(v) >= t]

    def grow(start, chosen, common):
        if len(chosen) == 5:
            return chosen, common
        for i in range(start, len(cands)):
            v = cands[i]
            nxt = host.adj[v] if common is None else common & host.adj[v]
            if len(nxt - set(chosen) - {v}) < t:
                continue
            got = grow(i + 1, chosen + [v], nxt)
            if got is not None:
                return got
        return None

    hit = grow(0, [], None)
    if hit is None:
        return None
    five, common = hit
    rest = sorted(set(common) - set(five))
    if len(rest) < t:
        return None
    return tuple(five), tuple(rest[:t])


# --- isomorphism ----------------------------------------------------------------


def find_isomorphism(g: Graph, h: Graph) -> dict | None:
    """Bijection g -> h preserving adjacency and non-adjacency, or None."""
    if g.n != h.n or g.m != h.m:
        return None
    if sorted(g.degrees()) != sorted(h.degrees()):
        return None

    def signature(x: Graph, v):
        return (x.degree(v), tuple(sorted(x.degree(w) for w in x.adj[v])))

    sg = [signature(g, v) for v in range(g.n)]
    sh = [signature(h, v) for v in range(h.n)]
    if sorted(sg) != sorted(sh):
        return None
    by_sig = {}
    for v, s in enumerate(sh):
        by_sig.setdefault(s, []).append(v)

    # BFS order inside each component, rarest signature first
    order, seen = [], set()
    freq = {s: len(vs) for s, vs in by_sig.items()}
    for s in sorted(range(g.n), key=lambda v: (freq[sg[v]], -g.degree(v), v)):
        if s in seen:
            continue
        seen.add(s)
        queue = [s]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(g.adj[v], key=lambda w: (freq[sg[w]], w)):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)

    fwd: dict[int, int] = {}
    used = set()

    def extend(i):
        if i == len(order):
            return True
        v = order[i]
        anchors = [fwd[w] for w in g.adj[v] if w in fwd]
        if anchors:
            pool = set(h.adj[anchors[0]])
            for a in anchors[1:]:
                pool &= h.adj[a]
            pool = [x for x in pool if sh[x] == sg[v]]
        else:
            pool = by_sig[sg[v]]
        for x in sorted(pool):
            if x in used:
                continue
            # mapped neighbourhoods must agree exactly
            ok = True
            for w, y in fwd.items():
                if (w in g.adj[v]) != (y in h.adj[x]):
                    ok = False
                    break
            if not ok:
                continue
            fwd[v] = x
            used.add(x)
            if extend(i + 1):
                return True
            del fwd[v]
            used.discard(x)
        return False

    import sys

    limit = sys.getrecursionlimit()
    if g.n + 100 > limit:
        sys.setrecursionlimit(g.n + 1000)
    return dict(fwd) if extend(0) else None


def is_isomorphism(g: Graph, h: Graph, mapping: dict) -> bool:
    if len(mapping) != g.n or set(mapping.values()) != set(range(h.n)) or g.n != h.n:
        return False
    return {frozenset((mapping[u], mapping[v])) for u, v in g.edges()} == {frozenset(e) for e in h.edges()}


# --- obstructions ---------------------------------------------------------------


@dataclass(frozen=True)
class Obstruction:
    kind: str  # "K5", "K5_81" or "TripleStackedTriangle"
    witness: tuple

    def vertices(self) -> tuple:
        return self.witness


def obstruction_scan(g: Graph) -> list[Obstruction]:
    """Every forbidden-subgraph kind present in g.

    A nonempty result means no convex-polyhedral surface realizes g; an
    empty result proves nothing.
    """
    found = []
    hit = contains_subgraph(g, complete(5))
    if hit is not None:
        found.append(Obstruction("K5", tuple(hit[i] for i in range(5))))
    k = contains_k5t(g, 81)
    if k is not None:
        found.append(Obstruction("K5_81", (k[0], k[1])))
    hit = contains_subgraph(g, triple_stacked_triangle())
    if hit is not None:
        found.append(Obstruction("TripleStackedTriangle", tuple(hit[i] for i in range(6))))
    return found


def witness_ok(g: Graph, ob: Obstruction) -> bool:
    """Check that an obstruction's witness really carries its pattern."""
    if ob.kind == "K5":
        return len(set(ob.witness)) == 5 and all(g.has_edge(a, b) for a, b in combinations(ob.witness, 2))
    if ob.kind == "TripleStackedTriangle":
        pat = triple_stacked_triangle()
        w = ob.witness
        return len(set(w)) == 6 and all(g.has_edge(w[u], w[v]) for u, v in pat.edges())
    if ob.kind == "K5_81":
        five, common = ob.witness
        return (
            len(set(five) | set(common)) == 5 + len(common) == 86
            and all(g.has_edge(a, b) for a in five for b in common)
        )
    return False


@dataclass(frozen=True)
class DensityStats:
    n: int
    m: int
    avg_degree: float
    kst_reference: float
    hypercube_d: int
    hypercube_edges: int


def density_stats(g: Graph) -> DensityStats:
    """Edge density against n^(9/5) and the hypercube count at the nearest 2^d."""
    n, m = g.n, g.m
    d = round(math.log2(n)) if n > 0 else 0
    return DensityStats(
        n=n,
        m=m,
        avg_degree=(2 * m / n) if n else 0.0,
        kst_reference=n ** 1.8,
        hypercube_d=d,
        hypercube_edges=(1 << d) * d // 2,
    )
