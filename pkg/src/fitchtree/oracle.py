"""Brute-force ground truth for desk-scale label sets.

Everything here decides by exhaustion: every tree topology on a small
label set is enumerated (via its hierarchy), every 0/1 edge labeling of
every topology is materialized, and explainability questions reduce to
membership in the resulting corpus. Least-resolvedness is decided from the
coarsement definition (no smaller cluster set admits any explaining
labeling), deliberately not from the syntactic shortcut used by
``EdgeLabeledTree.is_least_resolved``, so the two can be tested against
each other.

Size guards are hard limits with explicit errors; this module is a test
instrument, not a scalable API.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Iterable, Iterator

from .errors import LabelDomainError, NotFitchError
from .hierarchy import ClusterFamily, tree_from_hierarchy
from .phylo import EdgeLabeledTree, Tree
from .relation import Pair, Relation, all_pairs

MAX_ENUM_LABELS = 5
MAX_LEAST_RESOLVED_LABELS = 4
MAX_ISO_LABELS = 8


def _guard(n: int, low: int, high: int, what: str) -> None:
    if not low <= n <= high:
        raise LabelDomainError(
            f"{what} supports {low} to {high} labels, got {n}"
        )


def _set_partitions(items: list[str]) -> Iterator[list[list[str]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]


@lru_cache(maxsize=None)
def _hierarchies(labels: tuple[str, ...]) -> tuple[frozenset[frozenset[str]], ...]:
    if len(labels) == 1:
        return (frozenset({frozenset(labels)}),)
    results = []
    for part in _set_partitions(list(labels)):
        if len(part) < 2:
            continue
        choices = [_hierarchies(tuple(sorted(block))) for block in part]
        for combo in product(*choices):
            clusters = frozenset({frozenset(labels)}).union(*combo)
            results.append(clusters)
    return tuple(results)


def enumerate_hierarchies(labels: Iterable[str]) -> Iterator[ClusterFamily]:
    """Every hierarchy on the labels exactly once, i.e. every tree topology."""
    ground = tuple(sorted(set(labels)))
    _guard(len(ground), 2, MAX_ENUM_LABELS, "hierarchy enumeration")
    for clusters in _hierarchies(ground):
        yield ClusterFamily(ground, clusters)


def enumerate_labelings(tree: Tree) -> Iterator[EdgeLabeledTree]:
    """All 2^|E| edge labelings of a topology, in a fixed bit order."""
    non_root = [v for v in range(tree.n_vertices) if v != tree.root]
    for bits in product((0, 1), repeat=len(non_root)):
        labels: list[int | None] = [None] * tree.n_vertices
        for v, bit in zip(non_root, bits):
            labels[v] = bit
        yield EdgeLabeledTree(tree, tuple(labels))


def enumerate_labeled_trees(labels: Iterable[str]) -> Iterator[EdgeLabeledTree]:
    """All edge-labeled phylogenetic trees on the labels."""
    for family in enumerate_hierarchies(labels):
        yield from enumerate_labelings(tree_from_hierarchy(family))


@dataclass(frozen=True)
class _Corpus:
    topologies: tuple[Tree, ...]
    by_relation: dict[frozenset[Pair], tuple[EdgeLabeledTree, ...]]
    relations_by_clusters: dict[frozenset[frozenset[str]], frozenset[frozenset[Pair]]]


@lru_cache(maxsize=None)
def _corpus(labels: tuple[str, ...]) -> _Corpus:
    topologies = []
    by_relation: dict[frozenset[Pair], list[EdgeLabeledTree]] = {}
    relations_by_clusters: dict[frozenset[frozenset[str]], set[frozenset[Pair]]] = {}
    for family in enumerate_hierarchies(labels):
        tree = tree_from_hierarchy(family)
        topologies.append(tree)
        produced = relations_by_clusters.setdefault(tree.clusters, set())
        for labeled in enumerate_labelings(tree):
            pairs = labeled.extract_relation().pairs
            by_relation.setdefault(pairs, []).append(labeled)
            produced.add(pairs)
    return _Corpus(
        tuple(topologies),
        {k: tuple(v) for k, v in by_relation.items()},
        {k: frozenset(v) for k, v in relations_by_clusters.items()},
    )


def is_fitch(relation: Relation) -> bool:
    """True iff some enumerated edge-labeled tree explains the relation."""
    _guard(len(relation.labels), 2, MAX_ENUM_LABELS, "exhaustive recognition")
    return relation.pairs in _corpus(relation.labels).by_relation


def explaining_trees(relation: Relation) -> tuple[EdgeLabeledTree, ...]:
    """Every edge-labeled tree explaining the relation (possibly none)."""
    _guard(len(relation.labels), 2, MAX_ENUM_LABELS, "exhaustive recognition")
    return _corpus(relation.labels).by_relation.get(relation.pairs, ())


def fitch_relations(labels: Iterable[str]) -> tuple[Relation, ...]:
    """All Fitch relations on the labels, in sorted pair order."""
    ground = tuple(sorted(set(labels)))
    _guard(len(ground), 2, MAX_ENUM_LABELS, "exhaustive recognition")
    corpus = _corpus(ground)
    return tuple(
        Relation(ground, pairs)
        for pairs in sorted(corpus.by_relation, key=lambda p: tuple(sorted(p)))
    )


def least_resolved_trees(relation: Relation) -> tuple[EdgeLabeledTree, ...]:
    """All least-resolved explaining trees, one per isomorphism class.

    Uses the coarsement definition directly: a tree survives when no proper
    subset of its non-trivial clusters yields a topology that can explain
    the relation under any labeling.
    """
    _guard(
        len(relation.labels), 2, MAX_LEAST_RESOLVED_LABELS, "least-resolved search"
    )
    if not is_fitch(relation):
        raise NotFitchError("not a Fitch relation, nothing explains it")
    corpus = _corpus(relation.labels)
    trivial = {frozenset(relation.labels)} | {
        frozenset({x}) for x in relation.labels
    }
    survivors = []
    for labeled in corpus.by_relation[relation.pairs]:
        nontrivial = sorted(
            labeled.tree.clusters - trivial, key=lambda s: tuple(sorted(s))
        )
        coarser_explains = False
        for size in range(len(nontrivial)):
            for subset in combinations(nontrivial, size):
                key = frozenset(trivial | set(subset))
                if relation.pairs in corpus.relations_by_clusters.get(key, ()):
                    coarser_explains = True
                    break
            if coarser_explains:
                break
        if not coarser_explains:
            survivors.append(labeled)
    seen: set[tuple] = set()
    unique = []
    for labeled in survivors:
        form = canonical_form(labeled)
        if form not in seen:
            seen.add(form)
            unique.append(labeled)
    return tuple(unique)


def canonical_form(labeled: EdgeLabeledTree) -> tuple:
    """Order-independent encoding; equal forms mean isomorphic trees.

    Encodes each vertex as its sorted children entries, each entry pairing
    the child's incoming edge label with the child's encoding; leaves
    contribute their label.
    """
    tree = labeled.tree

    def encode(v: int) -> tuple:
        if tree.is_leaf(v):
            return ("leaf", tree.leaf_name[v])
        entries = sorted(
            (labeled.edge_label[c], encode(c)) for c in tree.children[v]
        )
        return ("inner", tuple(entries))

    return encode(tree.root)


def tree_iso(first: EdgeLabeledTree, second: EdgeLabeledTree) -> bool:
    """Root-, leaf-label- and edge-label-preserving isomorphism."""
    if first.leaf_labels != second.leaf_labels:
        raise LabelDomainError("tree isomorphism needs equal leaf sets")
    return canonical_form(first) == canonical_form(second)


def digraph_iso(first: Relation, second: Relation) -> bool:
    """True iff some label bijection maps one pair set exactly onto the other."""
    _guard(len(first.labels), 0, MAX_ISO_LABELS, "digraph isomorphism")
    _guard(len(second.labels), 0, MAX_ISO_LABELS, "digraph isomorphism")
    if len(first.labels) != len(second.labels):
        return False
    if len(first.pairs) != len(second.pairs):
        return False
    for image in permutations(second.labels):
        mapping = dict(zip(first.labels, image))
        if all((mapping[x], mapping[y]) in second.pairs for x, y in first.pairs):
            return True
    return False


CATALOG_LABELS = ("x", "y", "z")


@dataclass(frozen=True)
class TriangleClass:
    """One of the 16 isomorphism classes of relations on three labels."""

    name: str
    allowed: bool
    pairs: tuple[Pair, ...]
    members: int


def _canonical_pairs(
    pairs: frozenset[Pair], labels: tuple[str, ...]
) -> tuple[Pair, ...]:
    best = None
    for image in permutations(labels):
        mapping = dict(zip(labels, image))
        candidate = tuple(sorted((mapping[x], mapping[y]) for x, y in pairs))
        if best is None or candidate < best:
            best = candidate
    return best  # type: ignore[return-value]


def triangle_catalog() -> tuple[TriangleClass, ...]:
    """Classify all 64 relations on three labels into allowed and forbidden.

    Classes are grouped by digraph isomorphism and tagged by exhaustive
    explainability of one representative. Naming is local to this package:
    allowed classes sorted by (pair count, canonical pairs) become A1..,
    forbidden classes F1.. in the same order.
    """
    counts: dict[tuple[Pair, ...], int] = {}
    candidates = all_pairs(CATALOG_LABELS)
    for size in range(len(candidates) + 1):
        for chosen in combinations(candidates, size):
            canon = _canonical_pairs(frozenset(chosen), CATALOG_LABELS)
            counts[canon] = counts.get(canon, 0) + 1
    tagged = [
        (pairs, is_fitch(Relation.make(CATALOG_LABELS, pairs)), members)
        for pairs, members in counts.items()
    ]
    classes = []
    for allowed, prefix in ((True, "A"), (False, "F")):
        group = sorted(
            (pairs, members)
            for pairs, tag, members in tagged
            if tag == allowed
        )
        group.sort(key=lambda item: (len(item[0]), item[0]))
        classes.extend(
            TriangleClass(f"{prefix}{i}", allowed, pairs, members)
            for i, (pairs, members) in enumerate(group, start=1)
        )
    return tuple(classes)
