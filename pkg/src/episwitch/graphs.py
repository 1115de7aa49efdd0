"""Graph type, random-graph generators, and edge-list I/O.

Orientation convention: adjacency entry (i, j) = 1 means node j can infect
node i, so the linearized update is the plain matrix-vector product
P(t+1) = M P(t).  Edge-list files use the human direction "u v" = u infects v.
"""

from dataclasses import dataclass

import numpy as np

from .errors import EdgeListParseError, ParameterError

__all__ = [
    "Graph",
    "EpidemicParams",
    "read_edge_list",
    "write_edge_list",
    "gen_regular",
    "gen_watts_strogatz",
    "gen_barabasi_albert",
    "gen_gilbert",
    "star_graph",
    "empty_graph",
    "complete_graph",
]


@dataclass(frozen=True, eq=False)
class Graph:
    """Unweighted simple graph over nodes 0..n-1, stored dense.

    Attributes
    ----------
    n : int
        Node count.
    a : ndarray of uint8, shape (n, n)
        Adjacency matrix; a[i, j] = 1 means j can infect i.  Read-only.
    directed : bool
        If False the matrix is symmetric.
    """

    n: int
    a: np.ndarray
    directed: bool = False

    def __post_init__(self):
        a = np.ascontiguousarray(self.a, dtype=np.uint8)
        if self.n <= 0:
            raise ParameterError("node count must be positive")
        if a.shape != (self.n, self.n):
            raise ParameterError(f"adjacency shape {a.shape} != ({self.n}, {self.n})")
        if not np.isin(a, (0, 1)).all():
            raise ParameterError("adjacency entries must be 0 or 1")
        if np.diagonal(a).any():
            raise ParameterError("self-loops are not allowed")
        if not self.directed and not np.array_equal(a, a.T):
            raise ParameterError("undirected graph requires a symmetric adjacency")
        a.setflags(write=False)
        object.__setattr__(self, "a", a)

    @classmethod
    def from_edges(cls, n, edges, directed=False):
        """Build from (u, v) pairs meaning "u infects v"; duplicates collapse."""
        a = np.zeros((n, n), dtype=np.uint8)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ParameterError(f"self-loop at node {u}")
            a[v, u] = 1
            if not directed:
                a[u, v] = 1
        return cls(n, a, directed)

    @property
    def edge_count(self):
        """Number of edges (unordered pairs if undirected, arcs otherwise)."""
        total = int(self.a.sum())
        return total // 2 if not self.directed else total

    def degrees(self):
        """Degree per node (in-degree for directed graphs)."""
        return self.a.sum(axis=1).astype(np.int64)

    def matrix(self, dtype=np.float64):
        """Adjacency as a fresh writable array of the requested dtype."""
        return self.a.astype(dtype)


@dataclass(frozen=True)
class EpidemicParams:
    """Per-step infection probability beta and recovery probability delta."""

    beta: float
    delta: float

    def __post_init__(self):
        if not 0.0 <= self.beta <= 1.0:
            raise ParameterError(f"beta={self.beta} outside [0, 1]")
        if not 0.0 <= self.delta <= 1.0:
            raise ParameterError(f"delta={self.delta} outside [0, 1]")


# ---------------------------------------------------------------------------
# edge-list I/O
#
# Format: header "n m d" (d: 0 undirected, 1 directed), then m lines "u v"
# with 0-based ids.  Undirected input stores both orientations; duplicate
# edges collapse silently (tolerates real-world exports).


def read_edge_list(source):
    """Parse an edge list from a string, an open text file, or lines.

    Raises
    ------
    EdgeListParseError
        Malformed line, id out of range, or self-loop; names the line.
    """
    if isinstance(source, str):
        raw = source.splitlines()
    elif hasattr(source, "read"):
        raw = source.read().splitlines()
    else:
        raw = [line.rstrip("\n") for line in source]
    lines = [(no, text.strip()) for no, text in enumerate(raw, start=1) if text.strip()]
    if not lines:
        raise EdgeListParseError("empty input, expected header 'n m d'")

    no, header = lines[0]
    parts = header.split()
    if len(parts) != 3:
        raise EdgeListParseError(f"header must be 'n m d', got {header!r}", no)
    try:
        n, m, d = (int(p) for p in parts)
    except ValueError:
        raise EdgeListParseError(f"non-integer header field in {header!r}", no) from None
    if n <= 0 or m < 0 or d not in (0, 1):
        raise EdgeListParseError(f"bad header values in {header!r}", no)
    if len(lines) - 1 != m:
        raise EdgeListParseError(
            f"header declares {m} edges but {len(lines) - 1} edge lines found", no)

    directed = bool(d)
    a = np.zeros((n, n), dtype=np.uint8)
    for no, text in lines[1:]:
        parts = text.split()
        if len(parts) != 2:
            raise EdgeListParseError(f"edge line must be 'u v', got {text!r}", no)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(f"non-integer node id in {text!r}", no) from None
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeListParseError(f"node id out of range in {text!r}", no)
        if u == v:
            raise EdgeListParseError(f"self-loop in {text!r}", no)
        a[v, u] = 1
        if not directed:
            a[u, v] = 1
    return Graph(n, a, directed)


def write_edge_list(g, f):
    """Write g in the edge-list format (inverse of read_edge_list)."""
    if g.directed:
        arcs = [(int(u), int(v)) for v, u in zip(*np.nonzero(g.a))]
        arcs.sort()
        f.write(f"{g.n} {len(arcs)} 1\n")
        for u, v in arcs:
            f.write(f"{u} {v}\n")
    else:
        rows, cols = np.nonzero(np.triu(g.a))
        pairs = sorted(zip(rows.tolist(), cols.tolist()))
        f.write(f"{g.n} {len(pairs)} 0\n")
        for u, v in pairs:
            f.write(f"{u} {v}\n")


# ---------------------------------------------------------------------------
# generators (all deterministic given their seed)


def _pair_stubs(stubs, rng, adj):
    """One pass of suitable-pair matching; returns leftover stubs."""
    rng.shuffle(stubs)
    leftover = []
    for i in range(0, len(stubs) - 1, 2):
        u, v = int(stubs[i]), int(stubs[i + 1])
        if u == v or adj[u, v]:
            leftover.extend((u, v))
        else:
            adj[u, v] = 1
            adj[v, u] = 1
    if len(stubs) % 2:
        leftover.append(int(stubs[-1]))
    return leftover


def gen_regular(n, k, seed, max_restarts=10000):
    """Random simple k-regular undirected graph on n nodes.

    Pairing-model matching: stubs are shuffled and paired, clashing pairs are
    re-paired among themselves, and the attempt restarts when the leftover
    set stops shrinking.

    Raises
    ------
    ParameterError
        n*k odd or k >= n (no simple k-regular graph exists).
    """
    if k < 0 or k >= n:
        raise ParameterError(f"regular graph needs 0 <= k < n, got k={k}, n={n}")
    if (n * k) % 2:
        raise ParameterError(f"n*k must be even, got n={n}, k={k}")
    if k == 0:
        return empty_graph(n)
    rng = np.random.default_rng(seed)
    for _ in range(max_restarts):
        adj = np.zeros((n, n), dtype=np.uint8)
        stubs = np.repeat(np.arange(n), k)
        while len(stubs):
            leftover = _pair_stubs(stubs, rng, adj)
            if len(leftover) == len(stubs):
                break  # stuck, restart from scratch
            stubs = np.asarray(leftover)
        else:
            return Graph(n, adj, directed=False)
    raise ParameterError(
        f"could not realize a simple {k}-regular graph on {n} nodes "
        f"after {max_restarts} restarts")


def gen_watts_strogatz(n, k, p_rewire, seed):
    """Watts-Strogatz small-world graph: ring lattice plus random rewiring.

    Each node starts joined to its k nearest ring neighbors (k even); every
    lattice edge is rewired with probability p_rewire to a uniformly chosen
    new endpoint, avoiding self-loops and duplicates.  Edge count is
    preserved: n*k/2.
    """
    if k % 2 or k >= n:
        raise ParameterError(f"watts-strogatz needs even k < n, got k={k}, n={n}")
    if not 0.0 <= p_rewire <= 1.0:
        raise ParameterError(f"p_rewire={p_rewire} outside [0, 1]")
    rng = np.random.default_rng(seed)
    adj = np.zeros((n, n), dtype=np.uint8)
    for j in range(1, k // 2 + 1):
        for u in range(n):
            v = (u + j) % n
            adj[u, v] = adj[v, u] = 1
    for j in range(1, k // 2 + 1):
        for u in range(n):
            v = (u + j) % n
            if rng.random() >= p_rewire:
                continue
            # pick a fresh endpoint for (u, v); skip if u is saturated
            candidates = np.flatnonzero(adj[u] == 0)
            candidates = candidates[candidates != u]
            if len(candidates) == 0:
                continue
            w = int(rng.choice(candidates))
            adj[u, v] = adj[v, u] = 0
            adj[u, w] = adj[w, u] = 1
    return Graph(n, adj, directed=False)


def gen_barabasi_albert(n, m, seed):
    """Preferential-attachment graph grown from an m-node seed clique.

    Every arriving node attaches to m distinct existing nodes chosen with
    probability proportional to current degree.  Edge count is
    m(m-1)/2 + (n-m)*m.
    """
    if not 1 <= m < n:
        raise ParameterError(f"barabasi-albert needs 1 <= m < n, got m={m}, n={n}")
    rng = np.random.default_rng(seed)
    adj = np.zeros((n, n), dtype=np.uint8)
    adj[:m, :m] = 1
    np.fill_diagonal(adj, 0)
    # one entry per unit of degree; uniform draws give degree-proportional picks
    repeated = []
    for u in range(m):
        repeated.extend([u] * max(m - 1, 0))
    for v in range(m, n):
        targets = set()
        if not repeated:  # degenerate m=1 seed: lone node with degree 0
            targets.add(0)
        while len(targets) < m:
            targets.add(repeated[int(rng.integers(len(repeated)))])
        for u in targets:
            adj[u, v] = adj[v, u] = 1
            repeated.append(u)
        repeated.extend([v] * m)
    return Graph(n, adj, directed=False)


def gen_gilbert(n, p, seed):
    """Gilbert random graph: each unordered pair is an edge with probability p."""
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"p={p} outside [0, 1]")
    rng = np.random.default_rng(seed)
    coins = rng.random((n, n)) < p
    upper = np.triu(coins, k=1)
    adj = (upper | upper.T).astype(np.uint8)
    return Graph(n, adj, directed=False)


# small fixed topologies used throughout tests and presets


def star_graph(n, hub=0):
    """Undirected star: hub adjacent to every other node."""
    edges = [(hub, v) for v in range(n) if v != hub]
    return Graph.from_edges(n, edges, directed=False)


def empty_graph(n):
    """Graph with no edges."""
    return Graph(n, np.zeros((n, n), dtype=np.uint8), directed=False)


def complete_graph(n):
    """Complete graph K_n."""
    a = np.ones((n, n), dtype=np.uint8)
    np.fill_diagonal(a, 0)
    return Graph(n, a, directed=False)
