"""Cluster families, hierarchies, and their correspondence with trees.

A family of label sets is hierarchy-like (laminar) when any two members
are nested or disjoint; a hierarchy additionally contains the ground set
and every singleton. Hierarchies on at least two labels correspond one to
one with phylogenetic tree topologies via the cluster set, and both
directions of that correspondence live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import LabelDomainError, NotAHierarchyError
from .phylo import Tree


@dataclass(frozen=True)
class ClusterFamily:
    """A deduplicated collection of non-empty subsets of a ground label set."""

    ground: tuple[str, ...]
    sets: frozenset[frozenset[str]]

    def __post_init__(self):
        if list(self.ground) != sorted(set(self.ground)):
            raise LabelDomainError("ground labels must be sorted and duplicate-free")
        universe = set(self.ground)
        for member in self.sets:
            if not member:
                raise LabelDomainError("cluster families exclude the empty set")
            if not member <= universe:
                raise LabelDomainError(
                    f"member {sorted(member)!r} is not a subset of the ground set"
                )

    @classmethod
    def make(
        cls, ground: Iterable[str], sets: Iterable[Iterable[str]] = ()
    ) -> "ClusterFamily":
        return cls(
            tuple(sorted(set(ground))), frozenset(frozenset(s) for s in sets)
        )

    def overlapping_pair(self) -> tuple[frozenset[str], frozenset[str]] | None:
        """The lexicographically first pair of members that properly overlap.

        Two members overlap when their intersection is neither empty nor one
        of the two sets. Returns None when the family is hierarchy-like.
        """
        ordered = sorted(self.sets, key=lambda s: tuple(sorted(s)))
        for i, first in enumerate(ordered):
            for second in ordered[i + 1 :]:
                inter = first & second
                if inter and inter != first and inter != second:
                    return (first, second)
        return None

    def is_hierarchy_like(self) -> bool:
        return self.overlapping_pair() is None

    def is_hierarchy(self) -> bool:
        """Hierarchy-like and containing the ground set plus all singletons."""
        if not self.is_hierarchy_like():
            return False
        if frozenset(self.ground) not in self.sets:
            return False
        return all(frozenset({x}) in self.sets for x in self.ground)


def tree_from_hierarchy(family: ClusterFamily) -> Tree:
    """The unique phylogenetic tree whose cluster set equals ``family``.

    Vertices are the member sets ordered by containment; each set's parent
    is its smallest proper superset. Raises NotAHierarchyError (carrying the
    overlap witness when there is one) if the family is not a hierarchy, and
    LabelDomainError on fewer than two labels.
    """
    if len(family.ground) < 2:
        raise LabelDomainError("a phylogenetic tree needs at least two labels")
    witness = family.overlapping_pair()
    if witness is not None:
        p, q = witness
        raise NotAHierarchyError(
            f"overlapping clusters {sorted(p)!r} and {sorted(q)!r}", witness=witness
        )
    ground = frozenset(family.ground)
    if ground not in family.sets:
        raise NotAHierarchyError("the ground set is not a member")
    for x in family.ground:
        if frozenset({x}) not in family.sets:
            raise NotAHierarchyError(f"missing singleton {x!r}")

    members = sorted(family.sets, key=lambda s: (-len(s), tuple(sorted(s))))
    index = {member: i for i, member in enumerate(members)}
    parent: list[int | None] = [None] * len(members)
    leaf_name: list[str | None] = [None] * len(members)
    for i, member in enumerate(members):
        # Scanning backward over the size-descending order meets supersets
        # smallest first.
        for j in range(i - 1, -1, -1):
            if member < members[j]:
                parent[i] = j
                break
        if len(member) == 1:
            (leaf_name[i],) = member
    tree = Tree(tuple(parent), index[ground], tuple(leaf_name))
    tree.validate()  # degree bounds hold for every hierarchy; assert anyway
    return tree


def clusters_of_tree(tree: Tree) -> ClusterFamily:
    """The cluster set of a tree: descendant leaf sets of all vertices."""
    return ClusterFamily(tree.leaf_labels, tree.clusters)
