"""Physical propositions, testability, proposition posets, relation checks.

The physical proposition of a formula is the set of states where its
universal closure holds.  A formula is testable when some predicate has
exactly its signature; restricting the witness search to property
predicates gives the stricter notion used by the quantum bridge.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DepthLimitExceeded
from .formulas import Formula, render
from .models import MAX_RELATION_DEPTH, Model, SignatureSpace


@dataclass(frozen=True)
class PhysicalProposition:
    """Set of states where the provenance formula is certainly true."""

    states: frozenset[str]
    provenance: Formula

    def __eq__(self, other) -> bool:
        if isinstance(other, PhysicalProposition):
            return self.states == other.states
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.states)


def physical_proposition(m: Model, f: Formula) -> PhysicalProposition:
    space = SignatureSpace(m)
    return PhysicalProposition(space.proposition(space.mask_of(f, {})), f)


def testable(m: Model, f: Formula, scope: str = "properties") -> str | None:
    """First predicate (in table order) whose signature equals f's.

    scope="effects" searches every predicate, scope="properties" only the
    property predicates; returns None when no witness exists.
    """
    if scope not in ("effects", "properties"):
        raise ValueError(f"scope must be 'effects' or 'properties', got {scope!r}")
    space = SignatureSpace(m)
    target = space.mask_of(f, {})
    for p in m.predicates:
        if scope == "properties" and not p.is_property:
            continue
        if space.pred_masks[p.name] == target:
            return p.name
    return None


@dataclass
class PropositionPoset:
    """Deduplicated state sets under inclusion.

    ``meets``/``joins`` record, per index pair, the index of the greatest
    lower / least upper bound inside the element set, or None when it does
    not exist; the poset is a lattice when every entry is present.  The
    orthocomplement map is attached only when the poset was induced from a
    Hilbert-backed model.
    """

    elements: tuple[frozenset[str], ...]
    meets: dict[tuple[int, int], int | None]
    joins: dict[tuple[int, int], int | None]
    is_lattice: bool
    orthocomplement: dict[int, int] | None = None

    def leq(self, i: int, j: int) -> bool:
        return self.elements[i] <= self.elements[j]

    def cover_edges(self) -> list[tuple[int, int]]:
        """Hasse edges: i covered by j with nothing strictly between."""
        n = len(self.elements)
        edges = []
        for i in range(n):
            for j in range(n):
                if i == j or not self.elements[i] < self.elements[j]:
                    continue
                if any(
                    self.elements[i] < self.elements[k] < self.elements[j]
                    for k in range(n)
                ):
                    continue
                edges.append((i, j))
        return edges


def _bound_index(
    elements: tuple[frozenset[str], ...], i: int, j: int, lower: bool
) -> int | None:
    if lower:
        candidates = [
            k for k, e in enumerate(elements) if e <= elements[i] and e <= elements[j]
        ]
        best = [k for k in candidates if all(elements[c] <= elements[k] for c in candidates)]
    else:
        candidates = [
            k for k, e in enumerate(elements) if e >= elements[i] and e >= elements[j]
        ]
        best = [k for k in candidates if all(elements[c] >= elements[k] for c in candidates)]
    return best[0] if best else None


def proposition_poset(m: Model, formulas: list[Formula]) -> PropositionPoset:
    """Poset of the distinct physical propositions of the given formulas."""
    space = SignatureSpace(m)
    cache: dict[Formula, int] = {}
    seen: list[frozenset[str]] = []
    for f in formulas:
        prop = space.proposition(space.mask_of(f, cache))
        if prop not in seen:
            seen.append(prop)
    elements = tuple(sorted(seen, key=lambda s: (len(s), sorted(s))))
    meets: dict[tuple[int, int], int | None] = {}
    joins: dict[tuple[int, int], int | None] = {}
    for i in range(len(elements)):
        for j in range(len(elements)):
            meets[(i, j)] = _bound_index(elements, i, j, lower=True)
            joins[(i, j)] = _bound_index(elements, i, j, lower=False)
    is_lattice = all(v is not None for v in meets.values()) and all(
        v is not None for v in joins.values()
    )
    return PropositionPoset(elements, meets, joins, is_lattice)


# -- connective/set-operation relations ------------------------------------------


@dataclass
class RelationStats:
    relation: str
    checked: int
    violations: list[str]
    strict: int

    def as_dict(self) -> dict:
        return {
            "relation": self.relation,
            "checked": self.checked,
            "violations": len(self.violations),
            "strict": self.strict,
            **({"witnesses": self.violations} if self.violations else {}),
        }


@dataclass
class ConnectiveRelationsReport:
    entries: tuple[RelationStats, ...]

    @property
    def ok(self) -> bool:
        return all(not e.violations for e in self.entries)

    def entry(self, relation: str) -> RelationStats:
        for e in self.entries:
            if e.relation == relation:
                return e
        raise KeyError(relation)

    def as_dicts(self) -> list[dict]:
        return [e.as_dict() for e in self.entries]

    def text_lines(self) -> list[str]:
        return [
            f"relation {e.relation}: checked={e.checked} "
            f"violations={len(e.violations)} strict={e.strict}"
            for e in self.entries
        ]


def check_connective_relations(
    m: Model, max_depth: int = 3, predicates: tuple[str, ...] | None = None
) -> ConnectiveRelationsReport:
    """Verify, over all signature classes of formulas up to max_depth:
    the proposition of a negation is inside the complement, conjunction
    propositions are exact intersections, and disjunction propositions
    contain the union.  Violations are witnessed; the strictness census
    counts how often the two inclusions were proper.

    ``predicates`` bounds the formula alphabet; default is the whole table.
    """
    if max_depth > MAX_RELATION_DEPTH:
        raise DepthLimitExceeded(f"depth {max_depth} exceeds cap {MAX_RELATION_DEPTH}")
    space = SignatureSpace(m)
    classes = space.reachable_classes(predicates or m.predicate_names(), max_depth)
    items = list(classes.items())
    all_states = frozenset(m.states)
    prop_cache: dict[int, frozenset[str]] = {}

    def prop(mask: int) -> frozenset[str]:
        if mask not in prop_cache:
            prop_cache[mask] = space.proposition(mask)
        return prop_cache[mask]

    negation = RelationStats("negation", 0, [], 0)
    for mask, rep in items:
        negation.checked += 1
        p_neg = prop(space.omega & ~mask)
        complement = all_states - prop(mask)
        if not p_neg <= complement:
            negation.violations.append(render(rep))
        elif p_neg < complement:
            negation.strict += 1

    meet_rel = RelationStats("meet", 0, [], 0)
    join_rel = RelationStats("join", 0, [], 0)
    for m1, f1 in items:
        p1 = prop(m1)
        for m2, f2 in items:
            p2 = prop(m2)
            meet_rel.checked += 1
            if prop(m1 & m2) != p1 & p2:
                meet_rel.violations.append(f"{render(f1)} / {render(f2)}")
            join_rel.checked += 1
            p_or = prop(m1 | m2)
            if not p_or >= p1 | p2:
                join_rel.violations.append(f"{render(f1)} / {render(f2)}")
            elif p_or > p1 | p2:
                join_rel.strict += 1

    return ConnectiveRelationsReport((negation, meet_rel, join_rel))
