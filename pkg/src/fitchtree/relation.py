"""Irreflexive binary relations on a finite label set.

A relation doubles as a directed graph: labels are vertices, pairs are
directed edges. Labels are opaque strings; every deterministic choice in
this package (witness selection, serialization) uses lexicographic label
order.

Two textual formats are supported. Relation JSON looks like
``{"labels":["a","b","c"],"pairs":[["c","b"]]}``. The edge-list format has
one ``x<TAB>y`` pair per line, labels declared by appearance plus an
optional ``#labels: a b c`` header for isolated labels. Both parsers
reject reflexive and duplicate pairs with position-annotated errors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .errors import LabelDomainError, ParseError

Pair = tuple[str, str]


@dataclass(frozen=True)
class Relation:
    """An irreflexive binary relation, immutable after construction.

    ``labels`` is the sorted label set, ``pairs`` the set of ordered pairs
    (x, y) with distinct members of ``labels``. Use :meth:`make` to build
    one from unnormalized input; the raw constructor insists on already
    normalized fields.
    """

    labels: tuple[str, ...]
    pairs: frozenset[Pair]

    def __post_init__(self):
        if list(self.labels) != sorted(set(self.labels)):
            raise LabelDomainError("labels must be sorted and duplicate-free")
        universe = set(self.labels)
        for x, y in self.pairs:
            if x == y:
                raise LabelDomainError(f"reflexive pair ({x!r}, {y!r})")
            if x not in universe or y not in universe:
                raise LabelDomainError(f"pair ({x!r}, {y!r}) uses unknown labels")

    @classmethod
    def make(cls, labels: Iterable[str], pairs: Iterable[Pair] = ()) -> "Relation":
        """Build a relation, sorting labels and normalizing pairs."""
        return cls(tuple(sorted(set(labels))), frozenset((x, y) for x, y in pairs))

    def __contains__(self, pair: Pair) -> bool:
        return pair in self.pairs

    def _require(self, label: str) -> None:
        if label not in self._label_set:
            raise LabelDomainError(f"unknown label {label!r}")

    @property
    def _label_set(self) -> frozenset[str]:
        return frozenset(self.labels)

    def neighborhood(self, y: str) -> frozenset[str]:
        """The complementary in-neighborhood of ``y``: non-predecessors plus y.

        Returns { x != y : (x, y) not in the relation } together with y
        itself. Every label is in its own neighborhood.
        """
        self._require(y)
        pairs = self.pairs
        return frozenset(x for x in self.labels if x == y or (x, y) not in pairs)

    def neighborhood_family(self) -> "NeighborhoodFamily":
        """All neighborhoods, as a label->set map plus the deduplicated family."""
        by_label = {y: self.neighborhood(y) for y in self.labels}
        return NeighborhoodFamily(by_label, frozenset(by_label.values()))

    def induced(self, subset: Iterable[str]) -> "Relation":
        """The subrelation induced by ``subset``: pairs with both ends inside."""
        sub = frozenset(subset)
        missing = sub - self._label_set
        if missing:
            raise LabelDomainError(f"labels not in relation: {sorted(missing)!r}")
        return Relation(
            tuple(sorted(sub)),
            frozenset(p for p in self.pairs if p[0] in sub and p[1] in sub),
        )

    def triangle_violation(self) -> tuple[str, str, str] | None:
        """First triple (a, b, c) breaking the allowed-triangle condition.

        Every ordered triple of distinct labels with (c,b) present and (a,b)
        absent must have (c,a) present and (a,c), (b,c) either both present
        or both absent. Returns None when no triple violates this; otherwise
        the lexicographically first violating (a, b, c). Relations on fewer
        than three labels pass vacuously.
        """
        labels = self.labels
        pairs = self.pairs
        for a in labels:
            for b in labels:
                if b == a or (a, b) in pairs:
                    continue
                for c in labels:
                    if c == a or c == b or (c, b) not in pairs:
                        continue
                    if (c, a) not in pairs or ((a, c) in pairs) != ((b, c) in pairs):
                        return (a, b, c)
        return None


@dataclass(frozen=True)
class NeighborhoodFamily:
    """The neighborhoods of a relation: per-label map and deduplicated family."""

    by_label: dict[str, frozenset[str]]
    family: frozenset[frozenset[str]]


def all_pairs(labels: Iterable[str]) -> list[Pair]:
    """All ordered pairs of distinct labels, lexicographically sorted."""
    ordered = sorted(set(labels))
    return [(x, y) for x in ordered for y in ordered if x != y]


def complete_relation(labels: Iterable[str]) -> Relation:
    """The relation containing every ordered pair of distinct labels."""
    return Relation.make(labels, all_pairs(labels))


def _check_new_pair(x: str, y: str, seen: set[Pair], where: str) -> None:
    if x == y:
        raise ParseError(f"reflexive pair ({x!r}, {y!r}) at {where}")
    if (x, y) in seen:
        raise ParseError(f"duplicate pair ({x!r}, {y!r}) at {where}")
    seen.add((x, y))


def from_json(text: str) -> Relation:
    """Parse relation JSON; errors name the offending pair index."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", position=exc.pos) from exc
    if not isinstance(doc, dict):
        raise ParseError("relation JSON must be an object")
    if "labels" not in doc or "pairs" not in doc:
        raise ParseError('relation JSON needs "labels" and "pairs" keys')
    labels = doc["labels"]
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise ParseError('"labels" must be an array of strings')
    if len(set(labels)) != len(labels):
        raise ParseError('"labels" contains duplicates')
    universe = set(labels)
    seen: set[Pair] = set()
    for i, entry in enumerate(doc["pairs"]):
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(x, str) for x in entry)
        ):
            raise ParseError(f"pairs[{i}] is not a two-string array")
        x, y = entry
        if x not in universe or y not in universe:
            raise ParseError(f"pairs[{i}] uses undeclared labels ({x!r}, {y!r})")
        _check_new_pair(x, y, seen, f"pairs[{i}]")
    return Relation.make(labels, seen)


def to_json(relation: Relation) -> str:
    """Canonical relation JSON: sorted keys, sorted labels, sorted pairs."""
    doc = {
        "labels": list(relation.labels),
        "pairs": [list(p) for p in sorted(relation.pairs)],
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def from_edgelist(text: str) -> Relation:
    """Parse the tab-separated edge-list format; errors carry line numbers."""
    labels: set[str] = set()
    seen: set[Pair] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#labels:"):
            labels.update(line[len("#labels:") :].split())
            continue
        if line.startswith("#"):
            continue
        fields = raw.split("\t")
        if len(fields) != 2:
            raise ParseError(f"expected 'x<TAB>y' on line {lineno}")
        x, y = (f.strip() for f in fields)
        if not x or not y:
            raise ParseError(f"empty label on line {lineno}")
        _check_new_pair(x, y, seen, f"line {lineno}")
        labels.update((x, y))
    return Relation.make(labels, seen)


def to_edgelist(relation: Relation) -> str:
    """Canonical edge-list form: header with all labels, then sorted pairs."""
    for label in relation.labels:
        if any(ch.isspace() for ch in label) or not label:
            raise LabelDomainError(f"label {label!r} cannot appear in an edge list")
    lines = ["#labels: " + " ".join(relation.labels)]
    lines.extend(f"{x}\t{y}" for x, y in sorted(relation.pairs))
    return "\n".join(lines) + "\n"
