"""Fitch relation recognition and least-resolved tree construction.

A relation is a Fitch relation when some edge-labeled phylogenetic tree
explains it. Two independent recognition routes are implemented and must
always agree:

* the neighborhood route: the family of complementary neighborhoods has to
  be hierarchy-like (any two members nested or disjoint) and has to satisfy
  the size bound |N[y]| <= |N| for every member N and every y in N;
* the triangle route: no ordered triple of labels may exhibit a forbidden
  three-vertex pattern (see ``Relation.triangle_violation``).

For a recognized relation the unique least-resolved explaining tree is
built directly from the neighborhoods: the tree's clusters are the
neighborhoods together with the label set and all singletons, and an edge
is a 1-edge exactly when the cluster under it is a neighborhood.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar, Union

from .errors import LabelDomainError, NotFitchError, RecognizerDisagreement
from .hierarchy import ClusterFamily, tree_from_hierarchy
from .phylo import EdgeLabeledTree
from .relation import Relation


@dataclass(frozen=True)
class TriangleWitness:
    """An ordered triple (a, b, c) violating the triangle condition."""

    kind: ClassVar[str] = "triangle"
    triple: tuple[str, str, str]


@dataclass(frozen=True)
class OverlapWitness:
    """Two neighborhoods that properly overlap, refuting hierarchy-likeness.

    Serialized by the CLI with kind tag ``hlc``.
    """

    kind: ClassVar[str] = "hlc"
    sets: tuple[frozenset[str], frozenset[str]]


@dataclass(frozen=True)
class SizeWitness:
    """A member y of neighborhood N whose own neighborhood outgrows N.

    Serialized by the CLI with kind tag ``ic``.
    """

    kind: ClassVar[str] = "ic"
    neighborhood: frozenset[str]
    member: str


Witness = Union[TriangleWitness, OverlapWitness, SizeWitness]


@dataclass(frozen=True)
class Verdict:
    """Recognition outcome.

    ``witnesses`` is non-empty exactly when ``is_fitch`` is False. ``tree``
    is attached by :func:`explain` for Fitch relations on two or more
    labels and is then the unique least-resolved explaining tree.
    """

    is_fitch: bool
    witnesses: tuple[Witness, ...] = ()
    tree: EdgeLabeledTree | None = None

    @property
    def witness(self) -> Witness | None:
        return self.witnesses[0] if self.witnesses else None


def overlap_violation(
    relation: Relation,
) -> tuple[frozenset[str], frozenset[str]] | None:
    """First properly overlapping pair of neighborhoods, or None."""
    family = ClusterFamily(
        relation.labels, relation.neighborhood_family().family
    )
    return family.overlapping_pair()


def size_violation(relation: Relation) -> tuple[frozenset[str], str] | None:
    """First (N, y) with y in N but |N[y]| > |N|, or None.

    Neighborhoods are scanned in lexicographic order, members within each
    neighborhood likewise, so the witness is deterministic.
    """
    nf = relation.neighborhood_family()
    for neighborhood in sorted(nf.family, key=lambda s: tuple(sorted(s))):
        for y in sorted(neighborhood):
            if len(nf.by_label[y]) > len(neighborhood):
                return (neighborhood, y)
    return None


def recognize_by_neighborhoods(relation: Relation) -> Verdict:
    """Decide via the neighborhood conditions; overlap is checked first."""
    overlap = overlap_violation(relation)
    if overlap is not None:
        return Verdict(False, (OverlapWitness(overlap),))
    oversized = size_violation(relation)
    if oversized is not None:
        return Verdict(False, (SizeWitness(*oversized),))
    return Verdict(True)


def recognize_by_triangles(relation: Relation) -> Verdict:
    """Decide via the three-vertex condition on ordered triples."""
    triple = relation.triangle_violation()
    if triple is not None:
        return Verdict(False, (TriangleWitness(triple),))
    return Verdict(True)


def least_resolved_tree(relation: Relation) -> EdgeLabeledTree:
    """Build the unique least-resolved tree explaining a Fitch relation.

    The cluster set is the neighborhood family united with the label set
    and all singletons (the union silently absorbs neighborhoods that
    already are trivial clusters); the edge above a vertex is a 1-edge
    exactly when the vertex's cluster is a neighborhood. Raises
    NotFitchError (carrying the recognizer witness) for non-Fitch input and
    LabelDomainError on fewer than two labels.
    """
    if len(relation.labels) < 2:
        raise LabelDomainError("least-resolved trees need at least two labels")
    verdict = recognize_by_neighborhoods(relation)
    if not verdict.is_fitch:
        raise NotFitchError(
            "not a Fitch relation, no explaining tree exists",
            witness=verdict.witness,
        )
    family = relation.neighborhood_family().family
    clusters = (
        set(family)
        | {frozenset(relation.labels)}
        | {frozenset({x}) for x in relation.labels}
    )
    tree = tree_from_hierarchy(
        ClusterFamily(relation.labels, frozenset(clusters))
    )
    labels: list[int | None] = [None] * tree.n_vertices
    for v in range(tree.n_vertices):
        if v != tree.root:
            labels[v] = 1 if tree.cluster(v) in family else 0
    return EdgeLabeledTree(tree, tuple(labels))


def explain(relation: Relation) -> Verdict:
    """Run both recognizers and, on success, attach the least-resolved tree.

    The two routes are proven equivalent; a disagreement is an internal bug
    and raises RecognizerDisagreement. Non-Fitch verdicts carry the witness
    of each route (triangle first). Fitch relations on a single label get a
    positive verdict without a tree: phylogenetic trees need two leaves.
    """
    by_triangles = recognize_by_triangles(relation)
    by_neighborhoods = recognize_by_neighborhoods(relation)
    if by_triangles.is_fitch != by_neighborhoods.is_fitch:
        raise RecognizerDisagreement(
            f"triangle route says {by_triangles.is_fitch}, "
            f"neighborhood route says {by_neighborhoods.is_fitch}"
        )
    if not by_triangles.is_fitch:
        return Verdict(False, by_triangles.witnesses + by_neighborhoods.witnesses)
    if len(relation.labels) >= 2:
        return Verdict(True, (), least_resolved_tree(relation))
    return Verdict(True)
