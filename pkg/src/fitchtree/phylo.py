"""Rooted phylogenetic trees with {0,1} edge labels.

A phylogenetic tree is rooted, its root has degree >= 2 and every other
inner vertex degree >= 3; the leaves carry the label set. Edges are
oriented away from the root, so each non-root vertex has exactly one
incoming edge and that edge holds the vertex's 0/1 label. A 1-edge marks a
horizontal-transfer event, a 0-edge plain vertical inheritance.

The relation extracted from such a tree contains (x, y) exactly when the
path from the last common ancestor of x and y down to y crosses at least
one 1-edge.

Trees interchange as Newick with the branch-length slot carrying the edge
label, restricted to a literal ``0`` or ``1``, e.g.
``((5:0,6:0)v:1,1:1,2:0)u;``. Inner vertex names are accepted and ignored,
labels are mandatory on every edge, the terminating semicolon is mandatory,
and parser errors carry character offsets. Serialization is canonical:
children ordered by their smallest descendant leaf label, no inner names,
no whitespace.

Vertices are stable integer ids; leaves additionally carry their label.
All tree values are immutable after construction and every query is a pure
function, so they are safe to share freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import ContractError, LabelDomainError, ParseError, StructureError
from .relation import Relation

_NAME_STOP = set("(),:;")


@dataclass(frozen=True)
class Tree:
    """Rooted tree topology over integer vertex ids.

    ``parent[v]`` is the parent id or None, ``leaf_name[v]`` the leaf label
    or None for inner vertices. Structural soundness is checked by
    :meth:`validate`, not on construction, so that malformed values can be
    built and diagnosed.
    """

    parent: tuple[int | None, ...]
    root: int
    leaf_name: tuple[str | None, ...]

    def __post_init__(self):
        n = len(self.parent)
        if len(self.leaf_name) != n:
            raise StructureError("parent and leaf_name lengths differ")
        if not 0 <= self.root < n:
            raise StructureError(f"root id {self.root} out of range")
        for v, p in enumerate(self.parent):
            if p is not None and not 0 <= p < n:
                raise StructureError(f"parent of vertex {v} out of range")

    @property
    def n_vertices(self) -> int:
        return len(self.parent)

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        kids: list[list[int]] = [[] for _ in self.parent]
        for v, p in enumerate(self.parent):
            if p is not None:
                kids[p].append(v)
        return tuple(tuple(k) for k in kids)

    def is_leaf(self, v: int) -> bool:
        return not self.children[v]

    @cached_property
    def depth(self) -> tuple[int, ...]:
        d = [0] * self.n_vertices
        stack = [self.root]
        while stack:
            v = stack.pop()
            for c in self.children[v]:
                d[c] = d[v] + 1
                stack.append(c)
        return tuple(d)

    @cached_property
    def leaf_vertices(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n_vertices) if self.is_leaf(v))

    @cached_property
    def leaf_labels(self) -> tuple[str, ...]:
        return tuple(sorted(self.leaf_name[v] or "" for v in self.leaf_vertices))

    @cached_property
    def leaf_vertex(self) -> dict[str, int]:
        return {self.leaf_name[v]: v for v in self.leaf_vertices}

    def validate(self) -> None:
        """Raise StructureError unless this is a phylogenetic tree.

        Checks, in order: a single root reachable from everywhere (detecting
        extra roots and cycles), properly labeled leaves, inner vertices of
        degree >= 3, root degree >= 2.
        """
        if self.parent[self.root] is not None:
            raise StructureError(f"root vertex {self.root} has a parent")
        for v, p in enumerate(self.parent):
            if p is None and v != self.root:
                raise StructureError(f"disconnected: vertex {v} is a second root")
        for v in range(self.n_vertices):
            seen = set()
            cur: int | None = v
            while cur is not None:
                if cur in seen:
                    raise StructureError(f"cycle through vertex {v}")
                seen.add(cur)
                cur = self.parent[cur]
        names = set()
        for v in range(self.n_vertices):
            name = self.leaf_name[v]
            if self.is_leaf(v):
                if not name:
                    raise StructureError(f"leaf vertex {v} has no label")
                if name in names:
                    raise StructureError(f"duplicate leaf label {name!r}")
                names.add(name)
            elif name is not None:
                raise StructureError(f"inner vertex {v} carries a leaf label")
        for v in range(self.n_vertices):
            if v != self.root and not self.is_leaf(v) and len(self.children[v]) < 2:
                raise StructureError(f"inner vertex degree < 3 at vertex {v}")
        if len(self.children[self.root]) < 2:
            raise StructureError(f"root degree < 2 at vertex {self.root}")

    def _require_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not 0 <= v < self.n_vertices:
            raise LabelDomainError(f"unknown vertex {v!r}")

    def is_ancestor(self, u: int, v: int) -> bool:
        """True iff u lies on the root path of v (u == v included)."""
        self._require_vertex(u)
        self._require_vertex(v)
        cur: int | None = v
        while cur is not None:
            if cur == u:
                return True
            cur = self.parent[cur]
        return False

    def _lca2(self, u: int, v: int) -> int:
        du, dv = self.depth[u], self.depth[v]
        while du > dv:
            u = self.parent[u]  # type: ignore[assignment]
            du -= 1
        while dv > du:
            v = self.parent[v]  # type: ignore[assignment]
            dv -= 1
        while u != v:
            u = self.parent[u]  # type: ignore[assignment]
            v = self.parent[v]  # type: ignore[assignment]
        return u

    def lca(self, vertices: Iterable[int]) -> int:
        """Last common ancestor of a non-empty set of vertices."""
        vs = list(vertices)
        if not vs:
            raise LabelDomainError("lca of an empty vertex set")
        for v in vs:
            self._require_vertex(v)
        cur = vs[0]
        for v in vs[1:]:
            cur = self._lca2(cur, v)
        return cur

    @cached_property
    def cluster_by_vertex(self) -> tuple[frozenset[str], ...]:
        sets: list[frozenset[str] | None] = [None] * self.n_vertices
        for v in sorted(range(self.n_vertices), key=lambda v: -self.depth[v]):
            if self.is_leaf(v):
                sets[v] = frozenset({self.leaf_name[v]})
            else:
                sets[v] = frozenset().union(*(sets[c] for c in self.children[v]))
        return tuple(sets)  # type: ignore[arg-type]

    def cluster(self, v: int) -> frozenset[str]:
        """Labels of the leaves below v (v included when v is a leaf)."""
        self._require_vertex(v)
        return self.cluster_by_vertex[v]

    @cached_property
    def clusters(self) -> frozenset[frozenset[str]]:
        return frozenset(self.cluster_by_vertex)

    def is_coarsement_of(self, other: "Tree") -> bool:
        """True iff this tree's cluster set is a proper subset of other's."""
        if self.leaf_labels != other.leaf_labels:
            raise LabelDomainError("coarsement comparison needs equal leaf sets")
        return self.clusters < other.clusters


@dataclass(frozen=True)
class EdgeLabeledTree:
    """A phylogenetic tree plus a 0/1 label on every edge.

    ``edge_label[v]`` labels the edge from v's parent down to v; the root
    entry is None.
    """

    tree: Tree
    edge_label: tuple[int | None, ...]

    def __post_init__(self):
        if len(self.edge_label) != self.tree.n_vertices:
            raise StructureError("edge_label length differs from vertex count")

    def validate(self) -> None:
        self.tree.validate()
        for v in range(self.tree.n_vertices):
            label = self.edge_label[v]
            if v == self.tree.root:
                if label is not None:
                    raise StructureError("root must not carry an edge label")
            elif label not in (0, 1):
                raise StructureError(f"missing or invalid edge label at vertex {v}")

    @property
    def leaf_labels(self) -> tuple[str, ...]:
        return self.tree.leaf_labels

    def lca(self, vertices: Iterable[int]) -> int:
        return self.tree.lca(vertices)

    def inner_edge_children(self) -> Iterator[int]:
        """Vertices v such that (par(v), v) is an inner edge."""
        t = self.tree
        for v in range(t.n_vertices):
            if v != t.root and not t.is_leaf(v):
                yield v

    def path_has_one_edge(self, u: int, v: int) -> bool:
        """True iff the u -> v path crosses a 1-edge; u must be an ancestor of v."""
        t = self.tree
        t._require_vertex(u)
        t._require_vertex(v)
        found = False
        cur = v
        while cur != u:
            p = t.parent[cur]
            if p is None:
                raise LabelDomainError(f"vertex {u} is not an ancestor of vertex {v}")
            found = found or self.edge_label[cur] == 1
            cur = p
        return found

    def extract_relation(self) -> Relation:
        """The relation this tree explains.

        (x, y) is included exactly when the path from lca(x, y) to y
        contains at least one 1-edge. The tree is validated first;
        structural errors propagate.
        """
        self.validate()
        t = self.tree
        # For each leaf y, record at every ancestor a whether the a -> y
        # path (so far) crossed a 1-edge; pair queries then reduce to an lca
        # plus one dictionary lookup.
        one_below: dict[int, dict[int, bool]] = {}
        for y in t.leaf_vertices:
            flags: dict[int, bool] = {}
            seen = False
            cur: int | None = y
            while cur is not None:
                flags[cur] = seen
                seen = seen or self.edge_label[cur] == 1
                cur = t.parent[cur]
            one_below[y] = flags
        pairs = set()
        for x in t.leaf_vertices:
            for y in t.leaf_vertices:
                if x != y and one_below[y][t._lca2(x, y)]:
                    pairs.add((t.leaf_name[x], t.leaf_name[y]))
        return Relation(t.leaf_labels, frozenset(pairs))

    def explains(self, relation: Relation) -> bool:
        """True iff this tree's extracted relation equals ``relation``."""
        if self.leaf_labels != relation.labels:
            raise LabelDomainError("leaf set differs from the relation's label set")
        return self.extract_relation() == relation

    def is_least_resolved(self, relation: Relation) -> bool:
        """Whether no coarser tree could still explain ``relation``.

        Uses the two syntactic conditions equivalent to least-resolvedness:
        (a) every inner edge is a 1-edge, and (b) below every inner edge
        (par(v), v) hangs an outer 0-edge (v, leaf). The tree must explain
        the relation.
        """
        if not self.explains(relation):
            raise ContractError("tree does not explain the given relation")
        t = self.tree
        for v in self.inner_edge_children():
            if self.edge_label[v] != 1:
                return False
            if not any(
                t.is_leaf(c) and self.edge_label[c] == 0 for c in t.children[v]
            ):
                return False
        return True

    def to_newick(self) -> str:
        return to_newick(self)

    @classmethod
    def from_newick(cls, text: str) -> "EdgeLabeledTree":
        return parse_newick(text)


class _NewickParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.parents: list[int | None] = []
        self.leaf_names: list[str | None] = []
        self.labels: list[int | None] = []
        self.seen_names: set[str] = set()

    def error(self, message: str):
        raise ParseError(message, position=self.pos)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def new_vertex(self, parent: int | None) -> int:
        self.parents.append(parent)
        self.leaf_names.append(None)
        self.labels.append(None)
        return len(self.parents) - 1

    def read_name(self) -> str:
        start = self.pos
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch in _NAME_STOP or ch.isspace():
                break
            self.pos += 1
        return self.text[start:self.pos]

    def read_edge_label(self) -> int:
        if self.peek() != ":":
            self.error("expected ':' followed by an edge label")
        self.pos += 1
        self.skip_ws()
        token = self.read_name()
        if token not in ("0", "1"):
            self.error("edge label must be 0 or 1")
        return int(token)

    def parse_group(self, vertex: int) -> None:
        # self.pos is on '('
        self.pos += 1
        while True:
            self.skip_ws()
            self.parse_subtree(vertex)
            self.skip_ws()
            ch = self.peek()
            if ch == ",":
                self.pos += 1
                continue
            if ch == ")":
                self.pos += 1
                return
            self.error("expected ',' or ')'")

    def parse_subtree(self, parent: int) -> None:
        vertex = self.new_vertex(parent)
        if self.peek() == "(":
            self.parse_group(vertex)
            self.skip_ws()
            self.read_name()  # optional inner name, ignored
        else:
            name = self.read_name()
            if not name:
                self.error("expected a leaf name")
            if name in self.seen_names:
                self.error(f"duplicate leaf name {name!r}")
            self.seen_names.add(name)
            self.leaf_names[vertex] = name
        self.skip_ws()
        self.labels[vertex] = self.read_edge_label()

    def parse(self) -> EdgeLabeledTree:
        self.skip_ws()
        if self.peek() != "(":
            self.error("expected '(' opening the root")
        root = self.new_vertex(None)
        self.parse_group(root)
        self.skip_ws()
        self.read_name()  # optional root name, ignored
        self.skip_ws()
        if self.peek() == ":":
            self.error("root must not carry an edge label")
        if self.peek() != ";":
            self.error("expected terminating ';'")
        self.pos += 1
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("trailing content after ';'")
        tree = Tree(tuple(self.parents), root, tuple(self.leaf_names))
        return EdgeLabeledTree(tree, tuple(self.labels))


def parse_newick(text: str) -> EdgeLabeledTree:
    """Parse edge-labeled Newick; offsets in errors index into ``text``.

    Only the syntax is enforced here; run :meth:`EdgeLabeledTree.validate`
    to check the phylogenetic degree constraints.
    """
    return _NewickParser(text).parse()


def _writable_label(label: str | None) -> str:
    if not label or any(ch in _NAME_STOP or ch.isspace() for ch in label):
        raise LabelDomainError(f"label {label!r} cannot appear in Newick output")
    return label


def to_newick(elt: EdgeLabeledTree) -> str:
    """Canonical Newick: children sorted by smallest descendant leaf label."""
    t = elt.tree

    def render(v: int) -> str:
        if t.is_leaf(v):
            core = _writable_label(t.leaf_name[v])
        else:
            kids = sorted(t.children[v], key=lambda c: min(t.cluster(c)))
            core = "(" + ",".join(render(c) for c in kids) + ")"
        if v == t.root:
            return core + ";"
        return f"{core}:{elt.edge_label[v]}"

    return render(t.root)
