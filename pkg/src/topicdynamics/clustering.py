"""Density-based hierarchical clustering over a precomputed distance matrix.

The stages mirror the classic mutual-reachability construction:

1. raise pairwise distances to mutual-reachability weights using per-point
   core distances,
2. build the minimum spanning tree of the weighted complete graph,
3. replay its edges by increasing weight into a single-linkage hierarchy,
4. condense that hierarchy with a minimum cluster size and keep the
   clusters whose stability beats their descendants'.

Everything is deterministic: equal-weight edges are ordered by their
endpoint index pair, and cluster ids are assigned by decreasing size then
smallest member index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    InsufficientDataError,
    InvalidParameterError,
    MalformedTreeError,
)
from .validation import check_distance_matrix

#: Label assigned to points that belong to no selected cluster.
NOISE = -1


class Edge(NamedTuple):
    weight: float
    i: int
    j: int


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        self.parent[self.find(b)] = self.find(a)


def _as_matrix(matrix) -> np.ndarray:
    # Accept either a raw ndarray or a DistanceMatrix-like object.
    values = getattr(matrix, "values", matrix)
    return check_distance_matrix(values)


def _check_core_k(core_k: int, n: int) -> int:
    if not isinstance(core_k, (int, np.integer)) or isinstance(core_k, bool):
        raise InvalidParameterError(f"core_k must be an integer, got {core_k!r}")
    k = int(core_k)
    if not 1 <= k <= n:
        raise InvalidParameterError(f"core_k must be in [1, {n}], got {k}")
    return k


def core_distances(matrix, core_k: int) -> np.ndarray:
    """Distance from each point to its ``core_k``-th nearest neighbor.

    The point itself counts as its own first neighbor, so ``core_k=1``
    gives all zeros and mutual reachability degrades to the raw distances.
    """
    D = _as_matrix(matrix)
    k = _check_core_k(core_k, D.shape[0])
    return np.sort(D, axis=1)[:, k - 1]


def mutual_reachability(matrix, core_k: int) -> np.ndarray:
    """Pairwise mutual-reachability weights: max(core_i, core_j, d_ij)."""
    D = _as_matrix(matrix)
    core = core_distances(D, core_k)
    W = np.maximum(D, np.maximum(core[:, None], core[None, :]))
    np.fill_diagonal(W, 0.0)
    return W


def minimum_spanning_tree(matrix, core_k: int = 1) -> list[Edge]:
    """Kruskal MST of the mutual-reachability graph.

    Edges are considered in ``(weight, i, j)`` order, which makes the tree
    unique even when many weights tie.  Returned in the order accepted.
    """
    D = _as_matrix(matrix)
    n = D.shape[0]
    if n < 2:
        raise InsufficientDataError(f"need at least 2 points for a spanning tree, got {n}")
    W = mutual_reachability(D, core_k)
    iu, ju = np.triu_indices(n, k=1)
    order = np.lexsort((ju, iu, W[iu, ju]))
    uf = _UnionFind(n)
    edges: list[Edge] = []
    for idx in order:
        i = int(iu[idx])
        j = int(ju[idx])
        if uf.find(i) != uf.find(j):
            uf.union(i, j)
            edges.append(Edge(float(W[i, j]), i, j))
            if len(edges) == n - 1:
                break
    return edges


@dataclass(frozen=True)
class Dendrogram:
    """Single-linkage merge tree.

    Leaves are nodes ``0 .. n_leaves-1``; merge ``r`` creates node
    ``n_leaves + r``.  ``merges`` rows hold ``[left, right, distance,
    size]`` like a scipy linkage matrix, ordered by the merge sequence.
    """

    n_leaves: int
    merges: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.array(self.merges, dtype=np.float64, copy=True)
        if arr.ndim != 2 or arr.shape[1] != 4 or arr.shape[0] != self.n_leaves - 1:
            raise MalformedTreeError(
                f"expected a ({self.n_leaves - 1}, 4) merge table, got {arr.shape}"
            )
        arr.flags.writeable = False
        object.__setattr__(self, "merges", arr)

    @property
    def root(self) -> int:
        return 2 * self.n_leaves - 2

    def children(self, node: int) -> tuple[int, int]:
        row = self.merges[node - self.n_leaves]
        return int(row[0]), int(row[1])

    def size(self, node: int) -> int:
        if node < self.n_leaves:
            return 1
        return int(self.merges[node - self.n_leaves, 3])

    def leaf_members(self, node: int) -> list[int]:
        """All leaf indices in the subtree of ``node``, ascending."""
        stack = [node]
        leaves: list[int] = []
        while stack:
            cur = stack.pop()
            if cur < self.n_leaves:
                leaves.append(cur)
            else:
                stack.extend(self.children(cur))
        return sorted(leaves)


def build_hierarchy(edges: Sequence[Edge], n_points: int | None = None) -> Dendrogram:
    """Replay spanning-tree edges by increasing weight into a dendrogram.

    Equal-weight edges merge in ``(weight, i, j)`` order.  Raises
    ``MalformedTreeError`` if the edges contain a cycle or do not connect
    all points.
    """
    if not edges:
        raise MalformedTreeError("no edges given")
    edge_list = sorted(Edge(float(w), int(i), int(j)) for w, i, j in edges)
    if n_points is None:
        n_points = max(max(e.i, e.j) for e in edge_list) + 1
    n = int(n_points)
    if len(edge_list) != n - 1:
        raise MalformedTreeError(f"{len(edge_list)} edges cannot span {n} points")
    for e in edge_list:
        if not (0 <= e.i < n and 0 <= e.j < n) or e.i == e.j:
            raise MalformedTreeError(f"edge {e} out of range for {n} points")

    uf = _UnionFind(n)
    node_of = list(range(n))  # component root -> current tree node id
    size_of = [1] * n
    merges = np.empty((n - 1, 4), dtype=np.float64)
    for row, e in enumerate(edge_list):
        ra = uf.find(e.i)
        rb = uf.find(e.j)
        if ra == rb:
            raise MalformedTreeError(f"edge {e} creates a cycle")
        left, right = sorted((node_of[ra], node_of[rb]))
        merged_size = size_of[ra] + size_of[rb]
        merges[row] = (left, right, e.weight, merged_size)
        uf.union(ra, rb)
        root = uf.find(ra)
        node_of[root] = n + row
        size_of[root] = merged_size
    return Dendrogram(n, merges)


def _check_min_cluster_size(min_cluster_size: int) -> int:
    if not isinstance(min_cluster_size, (int, np.integer)) or isinstance(min_cluster_size, bool):
        raise InvalidParameterError(
            f"min_cluster_size must be an integer, got {min_cluster_size!r}"
        )
    m = int(min_cluster_size)
    if m < 2:
        raise InvalidParameterError(f"min_cluster_size must be >= 2, got {m}")
    return m


def extract_clusters(
    dendrogram: Dendrogram,
    min_cluster_size: int = 3,
    *,
    zero_distance_sub: float | None = None,
    allow_single_cluster: bool = False,
) -> tuple[np.ndarray, np.ndarray]:
    """Condense the hierarchy and select stable clusters.

    Returns ``(labels, stabilities)``: per-leaf integer labels (-1 for
    noise) and the stability of each selected cluster indexed by label.

    Stability of a condensed cluster is the sum over its points of
    ``1/d_leave - 1/d_join``.  A cluster is selected when its stability
    strictly exceeds the summed stability of its best descendants; the
    cluster containing everything is only eligible when
    ``allow_single_cluster`` is set.  Merges at distance zero use the
    substitute ``zero_distance_sub`` (default: smallest positive merge
    distance times 1e-3) so the inverse stays finite and ordering is kept.
    """
    mcs = _check_min_cluster_size(min_cluster_size)
    n = dendrogram.n_leaves
    if n < 2:
        return np.full(n, NOISE, dtype=np.int64), np.empty(0, dtype=np.float64)
    distances = dendrogram.merges[:, 2]
    if zero_distance_sub is None:
        positive = distances[distances > 0.0]
        zero_distance_sub = float(positive.min()) * 1e-3 if positive.size else 1e-12
    if zero_distance_sub <= 0.0:
        raise InvalidParameterError("zero_distance_sub must be positive")
    lam = 1.0 / np.where(distances > 0.0, distances, zero_distance_sub)

    birth: list[float] = [0.0]  # cluster id -> lambda at creation
    stability: list[float] = [0.0]
    children: list[list[int]] = [[]]  # condensed-tree children
    parent: list[int] = [-1]
    fall_cluster = np.full(n, 0, dtype=np.int64)

    stack: list[tuple[int, int]] = [(dendrogram.root, 0)]
    while stack:
        node, c = stack.pop()
        row = node - n
        split_lam = float(lam[row])
        left, right = dendrogram.children(node)
        size_left = dendrogram.size(left)
        size_right = dendrogram.size(right)
        if size_left >= mcs and size_right >= mcs:
            # Real split: everything leaves c here and two clusters are born.
            stability[c] += dendrogram.size(node) * (split_lam - birth[c])
            for child in (left, right):
                cid = len(birth)
                birth.append(split_lam)
                stability.append(0.0)
                children.append([])
                parent.append(c)
                children[c].append(cid)
                stack.append((child, cid))
        else:
            for child, size_child in ((left, size_left), (right, size_right)):
                if size_child >= mcs:
                    stack.append((child, c))  # c survives on this side
                else:
                    for leaf in dendrogram.leaf_members(child):
                        fall_cluster[leaf] = c
                        stability[c] += split_lam - birth[c]

    # Bottom-up selection; children always have larger ids than parents.
    n_clusters = len(birth)
    best = [0.0] * n_clusters
    selected = [False] * n_clusters
    for c in range(n_clusters - 1, -1, -1):
        child_total = float(sum(best[k] for k in children[c]))
        eligible = c != 0 or allow_single_cluster
        if eligible and stability[c] > child_total:
            selected[c] = True
            best[c] = stability[c]
        else:
            selected[c] = False
            best[c] = child_total

    # Keep only the highest selected cluster on each root-to-leaf path.
    emitted: list[int] = []
    walk = [0]
    while walk:
        c = walk.pop()
        if selected[c]:
            emitted.append(c)
        else:
            walk.extend(children[c])

    emitted_set = set(emitted)
    raw_labels = np.full(n, NOISE, dtype=np.int64)
    for leaf in range(n):
        c = int(fall_cluster[leaf])
        while c != -1 and c not in emitted_set:
            c = parent[c]
        if c != -1:
            raw_labels[leaf] = c

    # Renumber by decreasing size, then by smallest member index.
    def sort_key(c: int):
        members = np.where(raw_labels == c)[0]
        return (-members.size, int(members[0]))

    final_order = sorted((c for c in emitted if np.any(raw_labels == c)), key=sort_key)
    labels = np.full(n, NOISE, dtype=np.int64)
    stabilities = np.empty(len(final_order), dtype=np.float64)
    for new_id, c in enumerate(final_order):
        labels[raw_labels == c] = new_id
        stabilities[new_id] = stability[c]
    return labels, stabilities


def medoid_distances(matrix, labels) -> np.ndarray:
    """Normalized distance of every member to its cluster's medoid.

    The medoid is the member minimizing the summed distance to its
    co-members (lowest index on ties).  Distances are scaled by the
    cluster's maximum so the farthest member sits at 1.0; clusters whose
    members all coincide get 0.  Noise points get NaN.
    """
    D = _as_matrix(matrix)
    labels = np.asarray(labels, dtype=np.int64)
    if labels.shape[0] != D.shape[0]:
        raise InvalidParameterError(
            f"{labels.shape[0]} labels for a {D.shape[0]}-point matrix"
        )
    out = np.full(labels.shape[0], np.nan, dtype=np.float64)
    for c in np.unique(labels):
        if c == NOISE:
            continue
        members = np.where(labels == c)[0]
        sums = D[np.ix_(members, members)].sum(axis=1)
        medoid = int(members[int(np.argmin(sums))])
        dists = D[members, medoid]
        top = float(dists.max())
        out[members] = dists / top if top > 0.0 else 0.0
    return out


@dataclass(frozen=True)
class ClusterResult:
    """Labels plus per-cluster stability and per-topic medoid distance."""

    labels: np.ndarray = field(repr=False)
    stabilities: np.ndarray = field(repr=False)
    medoid_distance: np.ndarray = field(repr=False)
    dendrogram: Dendrogram = field(repr=False)

    @property
    def n_clusters(self) -> int:
        return int(self.stabilities.shape[0])

    def members(self, cluster: int) -> np.ndarray:
        return np.where(self.labels == cluster)[0]


def cluster_topics(
    matrix,
    min_cluster_size: int = 3,
    core_k: int | None = None,
    *,
    allow_single_cluster: bool = False,
) -> ClusterResult:
    """Full clustering pass over a distance matrix.

    ``core_k`` defaults to ``min_cluster_size``.  The zero-distance
    substitute for stability computations comes from the smallest positive
    entry of the input matrix.
    """
    D = _as_matrix(matrix)
    mcs = _check_min_cluster_size(min_cluster_size)
    k = min(mcs, D.shape[0]) if core_k is None else core_k
    edges = minimum_spanning_tree(D, core_k=k)
    dendrogram = build_hierarchy(edges, D.shape[0])
    positive = D[D > 0.0]
    sub = float(positive.min()) * 1e-3 if positive.size else 1e-12
    labels, stabilities = extract_clusters(
        dendrogram,
        mcs,
        zero_distance_sub=sub,
        allow_single_cluster=allow_single_cluster,
    )
    return ClusterResult(labels, stabilities, medoid_distances(D, labels), dendrogram)
