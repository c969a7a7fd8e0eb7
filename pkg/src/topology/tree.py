"""
TreeTen - Labelled trees over binary digits

A vertex is a DigitId (variable i, digit j; j = 1 is the most significant bit).
LabeledTree is validated on construction and immutable afterwards.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from src.utils.errors import (
    CycleDetected,
    DisconnectedTree,
    DuplicateDigit,
    MissingDigit,
)
from src.utils.validation import parse_digit_label

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class DigitId:
    variable_index: int
    digit_index: int

    @property
    def label(self) -> str:
        return f"{self.variable_index}.{self.digit_index}"

    @classmethod
    def parse(cls, label: Union[str, "DigitId", Sequence[int]]) -> "DigitId":
        if isinstance(label, DigitId):
            return label
        if isinstance(label, str):
            try:
                i, j = parse_digit_label(label)
            except ValueError as e:
                raise MissingDigit(str(e)) from e
            return cls(i, j)
        i, j = label
        return cls(int(i), int(j))

    def __str__(self) -> str:
        return self.label


Edge = Tuple[DigitId, DigitId]
VertexLike = Union[str, DigitId, Sequence[int]]


def edge_key(u: DigitId, v: DigitId) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class LabeledTree:
    """
    Loop-free labelled tree. Vertices are kept sorted; edges as sorted (u, v)
    pairs with u < v. Equality compares vertex and edge sets only.
    """

    vertices: Tuple[DigitId, ...]
    edges: Tuple[Edge, ...]
    _adjacency: Dict[DigitId, Tuple[DigitId, ...]] = field(
        default_factory=dict, init=False, repr=False, compare=False, hash=False
    )
    _position: Dict[DigitId, int] = field(
        default_factory=dict, init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        raw_vertices = list(self.vertices)
        if not raw_vertices:
            raise MissingDigit("tree has no vertices")
        seen = set()
        for v in raw_vertices:
            if v in seen:
                raise DuplicateDigit(f"digit {v} listed more than once")
            seen.add(v)

        edges: List[Edge] = []
        edge_set = set()
        for u, v in self.edges:
            if u not in seen or v not in seen:
                missing = u if u not in seen else v
                raise MissingDigit(f"edge ({u}, {v}) references unknown digit {missing}")
            if u == v:
                raise CycleDetected(f"self loop on {u}")
            key = edge_key(u, v)
            if key in edge_set:
                raise CycleDetected(f"edge ({u}, {v}) listed twice")
            edge_set.add(key)
            edges.append(key)

        _check_digit_ranges(raw_vertices)
        _check_acyclic_connected(raw_vertices, edges)

        vertices = tuple(sorted(raw_vertices))
        adjacency: Dict[DigitId, List[DigitId]] = {v: [] for v in vertices}
        for u, v in edges:
            adjacency[u].append(v)
            adjacency[v].append(u)

        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", tuple(sorted(edges)))
        object.__setattr__(
            self, "_adjacency", {v: tuple(sorted(nb)) for v, nb in adjacency.items()}
        )
        object.__setattr__(self, "_position", {v: k for k, v in enumerate(vertices)})

    # ---------- structure ----------
    @property
    def variables(self) -> Tuple[int, ...]:
        return tuple(sorted({v.variable_index for v in self.vertices}))

    @property
    def n_variables(self) -> int:
        return len(self.variables)

    @property
    def digits_per_variable(self) -> int:
        """Uniform digit count L (validated on construction)."""
        first = self.variables[0]
        return sum(1 for v in self.vertices if v.variable_index == first)

    @property
    def root(self) -> DigitId:
        """Default root: (1,1) when present, else the smallest digit."""
        return self.vertices[0]

    def neighbors(self, v: DigitId) -> Tuple[DigitId, ...]:
        return self._adjacency[v]

    def degree(self, v: DigitId) -> int:
        return len(self._adjacency[v])

    @property
    def degrees(self) -> Dict[DigitId, int]:
        return {v: len(nb) for v, nb in self._adjacency.items()}

    @property
    def max_degree(self) -> int:
        return max(self.degrees.values())

    def position(self, v: DigitId) -> int:
        return self._position[v]

    def __contains__(self, v: object) -> bool:
        return v in self._position

    def has_edge(self, u: DigitId, v: DigitId) -> bool:
        return u in self._adjacency and v in self._adjacency[u]

    def is_leaf(self, v: DigitId) -> bool:
        return len(self._adjacency[v]) <= 1

    # ---------- traversal ----------
    def traversal(self, root: Optional[DigitId] = None) -> Tuple[List[DigitId], Dict[DigitId, Optional[DigitId]]]:
        """Depth-first preorder from root, plus parent map."""
        root = root or self.root
        order: List[DigitId] = []
        parent: Dict[DigitId, Optional[DigitId]] = {root: None}
        stack = [root]
        while stack:
            v = stack.pop()
            order.append(v)
            # reversed so lowest neighbour is visited first
            for nb in reversed(self._adjacency[v]):
                if nb != parent[v]:
                    parent[nb] = v
                    stack.append(nb)
        return order, parent

    def postorder(self, root: Optional[DigitId] = None) -> List[DigitId]:
        order, _ = self.traversal(root)
        return list(reversed(order))

    def children(self, v: DigitId, parent: Optional[DigitId]) -> Tuple[DigitId, ...]:
        return tuple(nb for nb in self._adjacency[v] if nb != parent)

    def subtree(self, u: DigitId, v: DigitId) -> Tuple[DigitId, ...]:
        """Vertices on u's side of edge (u, v)."""
        if not self.has_edge(u, v):
            raise MissingDigit(f"no edge between {u} and {v}")
        found = []
        stack = [(u, v)]
        while stack:
            w, came_from = stack.pop()
            found.append(w)
            stack.extend((nb, w) for nb in self._adjacency[w] if nb != came_from)
        return tuple(sorted(found))

    def euler_tour(self, root: Optional[DigitId] = None) -> List[Edge]:
        """Directed moves (from, to) of a depth-first walk returning to root."""
        root = root or self.root
        moves: List[Edge] = []
        stack = [(root, None, iter(self._adjacency[root]))]
        while stack:
            v, parent, pending = stack[-1]
            for nb in pending:
                if nb != parent:
                    moves.append((v, nb))
                    stack.append((nb, v, iter(self._adjacency[nb])))
                    break
            else:
                stack.pop()
                if parent is not None:
                    moves.append((v, parent))
        return moves

    def dfs_edges(self, root: Optional[DigitId] = None) -> List[Edge]:
        """Downward (parent, child) edges in depth-first order."""
        _, parent = self.traversal(root)
        return [m for m in self.euler_tour(root) if parent.get(m[1]) == m[0]]

    # ---------- derived trees ----------
    def relabel(self, mapping: Mapping[DigitId, DigitId]) -> "LabeledTree":
        m = lambda v: mapping.get(v, v)  # noqa: E731
        return LabeledTree(
            tuple(m(v) for v in self.vertices),
            tuple((m(u), m(v)) for u, v in self.edges),
        )

    def union(self, other: "LabeledTree", bridges: Iterable[Tuple[VertexLike, VertexLike]]) -> "LabeledTree":
        extra = tuple((DigitId.parse(a), DigitId.parse(b)) for a, b in bridges)
        return LabeledTree(self.vertices + other.vertices, self.edges + other.edges + extra)

    def to_document(self) -> Dict[str, list]:
        return {
            "vertices": [v.label for v in self.vertices],
            "edges": [[u.label, v.label] for u, v in self.edges],
        }


def _check_digit_ranges(vertices: Sequence[DigitId]) -> None:
    per_variable: Dict[int, set] = defaultdict(set)
    for v in vertices:
        if v.variable_index < 1 or v.digit_index < 1:
            raise MissingDigit(f"digit {v} has a non-positive index")
        per_variable[v.variable_index].add(v.digit_index)
    lengths = set()
    for i, digits in sorted(per_variable.items()):
        L = max(digits)
        if digits != set(range(1, L + 1)):
            gap = min(set(range(1, L + 1)) - digits)
            raise MissingDigit(f"variable {i} is missing digit {i}.{gap}")
        lengths.add(L)
    if len(lengths) > 1:
        raise MissingDigit(f"variables have unequal digit counts {sorted(lengths)}")


def _check_acyclic_connected(vertices: Sequence[DigitId], edges: Sequence[Edge]) -> None:
    parent = {v: v for v in vertices}

    def find(v: DigitId) -> DigitId:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            raise CycleDetected(f"edge ({u}, {v}) closes a cycle")
        parent[ru] = rv

    components = {find(v) for v in vertices}
    if len(components) > 1:
        raise DisconnectedTree(f"tree has {len(components)} connected components")


def build_tree(
    vertices: Iterable[VertexLike],
    edges: Iterable[Tuple[VertexLike, VertexLike]],
) -> LabeledTree:
    """Build and validate a LabeledTree from labels ("i.j"), DigitIds or (i, j) pairs."""
    vs = tuple(DigitId.parse(v) for v in vertices)
    es = tuple((DigitId.parse(a), DigitId.parse(b)) for a, b in edges)
    tree = LabeledTree(vs, es)
    logger.debug("built tree: %d vertices, max degree %d", len(tree.vertices), tree.max_degree)
    return tree
