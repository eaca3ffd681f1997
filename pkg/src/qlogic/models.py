"""Finite models: states, per-state universes, predicate extensions.

Evaluation is two-valued and Tarskian: an open formula is checked at a
(state, object) pair, a sentence is the universal closure over the state's
universe.  Because formulas carry a single variable, quantifying over all
interpretations collapses to quantifying over the objects of each state;
the ``signature`` of a formula (the set of satisfying (state, object)
pairs) therefore realizes logical equivalence, while the set of states
where the universal closure holds realizes physical equivalence.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .errors import (
    ClosureOverflow,
    DepthLimitExceeded,
    ModelValidationError,
    ObjectOutOfRange,
    QuantumNodeInClassicalEval,
    UnknownPredicate,
    UnknownState,
)
from .formulas import (
    MAX_ENUM_DEPTH,
    And,
    Formula,
    Not,
    Or,
    Pred,
    render,
)

Signature = frozenset  # of (state, object index) pairs

_IDENT_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")

MAX_RELATION_DEPTH = 3


@dataclass(frozen=True)
class PredicateInfo:
    name: str
    is_property: bool = True
    ortho: str | None = None


@dataclass
class Model:
    """Immutable-by-convention finite structure.

    ``extensions`` maps (state, predicate name) to a frozenset of object
    indices; missing entries are treated as empty during normalization.
    Paired predicates must have complementary extensions in every state.
    """

    predicates: tuple[PredicateInfo, ...]
    states: tuple[str, ...]
    universe_sizes: dict[str, int]
    extensions: dict[tuple[str, str], frozenset[int]]

    def __post_init__(self):
        self.predicates = tuple(self.predicates)
        self.states = tuple(self.states)
        names = [p.name for p in self.predicates]
        if len(set(names)) != len(names):
            raise ModelValidationError("duplicate predicate names")
        for name in names:
            if not _IDENT_RE.match(name):
                raise ModelValidationError(
                    f"predicate name {name!r} is not an identifier"
                )
        if len(set(self.states)) != len(self.states):
            raise ModelValidationError("duplicate state names")
        by_name = {p.name: p for p in self.predicates}
        for s in self.states:
            if self.universe_sizes.get(s, 0) < 1:
                raise ModelValidationError(f"state {s!r} needs a universe of size >= 1")
        normalized: dict[tuple[str, str], frozenset[int]] = {}
        for (s, pname), ext in self.extensions.items():
            if s not in self.universe_sizes:
                raise ModelValidationError(f"extension for unknown state {s!r}")
            if pname not in by_name:
                raise ModelValidationError(f"extension for unknown predicate {pname!r}")
            ext = frozenset(ext)
            n = self.universe_sizes[s]
            bad = [u for u in ext if not 0 <= u < n]
            if bad:
                raise ModelValidationError(
                    f"state {s!r}, predicate {pname!r}: object index {bad[0]} "
                    f"outside universe of size {n}"
                )
            normalized[(s, pname)] = ext
        for s in self.states:
            for p in self.predicates:
                normalized.setdefault((s, p.name), frozenset())
        self.extensions = normalized
        for p in self.predicates:
            if p.ortho is None:
                continue
            partner = by_name.get(p.ortho)
            if partner is None:
                raise ModelValidationError(
                    f"predicate {p.name!r} pairs with unknown predicate {p.ortho!r}"
                )
            if partner.ortho != p.name:
                raise ModelValidationError(
                    f"pairing of {p.name!r} and {p.ortho!r} is not symmetric"
                )
            for s in self.states:
                full = frozenset(range(self.universe_sizes[s]))
                if self.extensions[(s, p.name)] != full - self.extensions[(s, p.ortho)]:
                    raise ModelValidationError(
                        f"state {s!r}, predicate {p.name!r}: extension is not the "
                        f"complement of its partner {p.ortho!r}"
                    )

    # -- lookups ------------------------------------------------------------

    def predicate(self, name: str) -> PredicateInfo:
        for p in self.predicates:
            if p.name == name:
                return p
        raise UnknownPredicate(name)

    def has_predicate(self, name: str) -> bool:
        return any(p.name == name for p in self.predicates)

    def predicate_names(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.predicates)

    def property_names(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.predicates if p.is_property)

    def universe_size(self, state: str) -> int:
        try:
            return self.universe_sizes[state]
        except KeyError:
            raise UnknownState(state) from None

    def extension(self, state: str, predicate: str) -> frozenset[int]:
        self.universe_size(state)
        try:
            return self.extensions[(state, predicate)]
        except KeyError:
            raise UnknownPredicate(predicate) from None


# -- model files --------------------------------------------------------------


def model_from_dict(data: Mapping) -> Model:
    try:
        preds = tuple(
            PredicateInfo(
                name=str(p["name"]),
                is_property=bool(p.get("property", True)),
                ortho=p.get("ortho"),
            )
            for p in data["predicates"]
        )
        states = []
        sizes: dict[str, int] = {}
        extensions: dict[tuple[str, str], frozenset[int]] = {}
        for entry in data["states"]:
            s = str(entry["name"])
            states.append(s)
            sizes[s] = int(entry["universe"])
            for pname, indices in entry.get("extensions", {}).items():
                extensions[(s, str(pname))] = frozenset(int(i) for i in indices)
    except (KeyError, TypeError) as exc:
        raise ModelValidationError(f"malformed model file: {exc}") from exc
    return Model(preds, tuple(states), sizes, extensions)


def model_to_dict(m: Model) -> dict:
    return {
        "predicates": [
            {"name": p.name, "property": p.is_property, "ortho": p.ortho}
            for p in m.predicates
        ],
        "states": [
            {
                "name": s,
                "universe": m.universe_sizes[s],
                "extensions": {
                    p.name: sorted(m.extensions[(s, p.name)]) for p in m.predicates
                },
            }
            for s in m.states
        ],
    }


def load_model(path: str | Path) -> Model:
    with open(path, "r", encoding="utf-8") as fh:
        return model_from_dict(json.load(fh))


def save_model(m: Model, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(model_to_dict(m), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


# -- evaluation ----------------------------------------------------------------


def eval_open(m: Model, f: Formula, state: str, obj: int) -> bool:
    """Truth of the open formula at one (state, object) pair."""
    n = m.universe_size(state)
    if not 0 <= obj < n:
        raise ObjectOutOfRange(f"object {obj} outside universe of size {n} in {state!r}")
    return _eval(m, f, state, obj)


def _eval(m: Model, f: Formula, state: str, obj: int) -> bool:
    if isinstance(f, Pred):
        return obj in m.extension(state, f.name)
    if isinstance(f, Not):
        return not _eval(m, f.child, state, obj)
    if isinstance(f, And):
        return _eval(m, f.left, state, obj) and _eval(m, f.right, state, obj)
    if isinstance(f, Or):
        return _eval(m, f.left, state, obj) or _eval(m, f.right, state, obj)
    raise QuantumNodeInClassicalEval(render(f))


def eval_universal(m: Model, f: Formula, state: str) -> bool:
    """Truth of the universally closed sentence: every object satisfies f."""
    return all(eval_open(m, f, state, u) for u in range(m.universe_size(state)))


# -- signatures as bitmasks ------------------------------------------------------


class SignatureSpace:
    """Bit layout of all (state, object) pairs of a model.

    Signatures are manipulated as integer bitmasks internally; the public
    API converts to frozensets of pairs.  Shared by the sweep-style checks
    so predicate masks are computed once.
    """

    def __init__(self, m: Model):
        self.model = m
        self.pairs: list[tuple[str, int]] = [
            (s, u) for s in m.states for u in range(m.universe_sizes[s])
        ]
        self.position = {pair: i for i, pair in enumerate(self.pairs)}
        self.omega = (1 << len(self.pairs)) - 1
        self.state_masks: dict[str, int] = {}
        for s in m.states:
            mask = 0
            for u in range(m.universe_sizes[s]):
                mask |= 1 << self.position[(s, u)]
            self.state_masks[s] = mask
        self.pred_masks: dict[str, int] = {}
        for p in m.predicates:
            mask = 0
            for s in m.states:
                for u in m.extensions[(s, p.name)]:
                    mask |= 1 << self.position[(s, u)]
            self.pred_masks[p.name] = mask

    def mask_of(self, f: Formula, cache: dict[Formula, int] | None = None) -> int:
        if cache is not None and f in cache:
            return cache[f]
        if isinstance(f, Pred):
            try:
                value = self.pred_masks[f.name]
            except KeyError:
                raise UnknownPredicate(f.name) from None
        elif isinstance(f, Not):
            value = self.omega & ~self.mask_of(f.child, cache)
        elif isinstance(f, And):
            value = self.mask_of(f.left, cache) & self.mask_of(f.right, cache)
        elif isinstance(f, Or):
            value = self.mask_of(f.left, cache) | self.mask_of(f.right, cache)
        else:
            raise QuantumNodeInClassicalEval(render(f))
        if cache is not None:
            cache[f] = value
        return value

    def to_signature(self, mask: int) -> Signature:
        return frozenset(pair for i, pair in enumerate(self.pairs) if mask >> i & 1)

    def proposition(self, mask: int) -> frozenset[str]:
        """States whose whole universe satisfies the mask."""
        return frozenset(
            s for s in self.model.states if mask & self.state_masks[s] == self.state_masks[s]
        )

    def reachable_classes(
        self, generator_names: Iterable[str], max_depth: int
    ) -> dict[int, Formula]:
        """Signature classes of all classical formulas over the generators
        up to the given depth, each with one representative formula.

        Signatures compose (the mask of a connective node is a set
        operation on the children's masks), so layering over class
        representatives enumerates exactly the signatures of the full
        formula enumeration without materializing it.
        """
        classes: dict[int, Formula] = {}
        for name in generator_names:
            classes.setdefault(self.mask_of(Pred(name)), Pred(name))
        for _ in range(max_depth):
            if not self._grow(classes):
                break
        return classes

    def closed_classes(
        self, generator_names: Iterable[str], max_elements: int | None = None
    ) -> dict[int, Formula]:
        """Fixpoint of reachable_classes: the full generated subalgebra.

        The subalgebra has up to 2**a elements for a partition with a
        atoms, so callers that cannot bound the generator count should
        pass a cap; exceeding it raises ClosureOverflow.
        """
        classes: dict[int, Formula] = {}
        for name in generator_names:
            classes.setdefault(self.mask_of(Pred(name)), Pred(name))
        while self._grow(classes):
            if max_elements is not None and len(classes) > max_elements:
                raise ClosureOverflow(
                    f"signature algebra exceeded {max_elements} elements",
                    generators=tuple(generator_names),
                )
        return classes

    def _grow(self, classes: dict[int, Formula]) -> bool:
        current = list(classes.items())
        fresh: dict[int, Formula] = {}
        for mask, f in current:
            neg = self.omega & ~mask
            if neg not in classes and neg not in fresh:
                fresh[neg] = Not(f)
        for m1, f1 in current:
            for m2, f2 in current:
                both = m1 & m2
                if both not in classes and both not in fresh:
                    fresh[both] = And(f1, f2)
                either = m1 | m2
                if either not in classes and either not in fresh:
                    fresh[either] = Or(f1, f2)
        classes.update(fresh)
        return bool(fresh)


def signature(m: Model, f: Formula) -> Signature:
    """The set of (state, object) pairs satisfying the classical formula."""
    space = SignatureSpace(m)
    return space.to_signature(space.mask_of(f, {}))


def logical_leq(m: Model, f: Formula, g: Formula) -> bool:
    """Signature inclusion: truth of f implies truth of g pointwise."""
    space = SignatureSpace(m)
    cache: dict[Formula, int] = {}
    mf, mg = space.mask_of(f, cache), space.mask_of(g, cache)
    return mf & ~mg == 0


def physical_leq(m: Model, f: Formula, g: Formula) -> bool:
    """Certain truth of f implies certain truth of g, state by state."""
    space = SignatureSpace(m)
    cache: dict[Formula, int] = {}
    pf = space.proposition(space.mask_of(f, cache))
    pg = space.proposition(space.mask_of(g, cache))
    return pf <= pg


# -- quotient algebra -------------------------------------------------------------


@dataclass
class QuotientAlgebra:
    """Signature classes with the set operations relative to omega."""

    omega: Signature
    elements: frozenset
    generators: dict[str, Signature]

    def complement(self, a: Signature) -> Signature:
        return self.omega - a

    def meet(self, a: Signature, b: Signature) -> Signature:
        return a & b

    def join(self, a: Signature, b: Signature) -> Signature:
        return a | b

    def leq(self, a: Signature, b: Signature) -> bool:
        return a <= b


def quotient_boolean(
    m: Model,
    predicates: Iterable[str] | None = None,
    max_depth: int = 3,
    max_elements: int = 512,
) -> QuotientAlgebra:
    """The algebra of signatures of classical formulas over the predicates.

    The generated family is closed to its (finite) fixpoint so the result
    satisfies the closure invariants regardless of the enumeration cap;
    every element is the signature of some enumerable formula.  Exceeding
    max_elements (beyond which exhaustive law sweeps stop being feasible)
    raises ClosureOverflow.
    """
    if max_depth > MAX_ENUM_DEPTH:
        raise DepthLimitExceeded(f"depth {max_depth} exceeds cap {MAX_ENUM_DEPTH}")
    names = tuple(predicates) if predicates is not None else m.predicate_names()
    space = SignatureSpace(m)
    if not names:
        return QuotientAlgebra(space.to_signature(space.omega), frozenset(), {})
    classes = space.closed_classes(names, max_elements)
    return QuotientAlgebra(
        omega=space.to_signature(space.omega),
        elements=frozenset(space.to_signature(mask) for mask in classes),
        generators={name: space.to_signature(space.pred_masks[name]) for name in names},
    )


def boolean_law_violations(alg: QuotientAlgebra, max_reports: int = 20) -> list[str]:
    """Exhaustive Boolean-lattice axiom check over the algebra's elements.

    Covers closure of the three operations, bottom/top membership,
    complementation, identity, idempotence, commutativity, absorption,
    associativity and both distributive laws.  Pair and triple sweeps are
    vectorized when the carrier fits in 64 bits.
    """
    if not alg.elements:
        return []
    pairs = sorted(alg.omega)
    position = {p: i for i, p in enumerate(pairs)}
    width = len(pairs)

    def mask(sig: Signature) -> int:
        out = 0
        for p in sig:
            out |= 1 << position[p]
        return out

    masks = sorted(mask(s) for s in alg.elements)
    element_set = set(masks)
    omega_mask = (1 << width) - 1
    out: list[str] = []

    def report(msg: str) -> None:
        if len(out) < max_reports:
            out.append(msg)

    if 0 not in element_set:
        report("bottom (empty signature) missing")
    if omega_mask not in element_set:
        report("top (full signature) missing")

    for a in masks:
        comp = omega_mask & ~a
        if comp not in element_set:
            report(f"complement of element {a:#x} not in carrier")
        if a & comp != 0 or a | comp != omega_mask:
            report(f"complement laws fail for element {a:#x}")
        if a & omega_mask != a or a | 0 != a:
            report(f"identity laws fail for element {a:#x}")
        if a & a != a or a | a != a:
            report(f"idempotence fails for element {a:#x}")

    for a in masks:
        for b in masks:
            if a & b not in element_set or a | b not in element_set:
                report(f"carrier not closed for pair ({a:#x}, {b:#x})")
            if a & b != b & a or a | b != b | a:
                report(f"commutativity fails for pair ({a:#x}, {b:#x})")
            if a & (a | b) != a or a | (a & b) != a:
                report(f"absorption fails for pair ({a:#x}, {b:#x})")

    if width <= 64:
        arr = np.array(masks, dtype=np.uint64)
        b_col, c_row = arr[:, None], arr[None, :]
        bc_and, bc_or = b_col & c_row, b_col | c_row
        for a in arr:
            if not np.array_equal(a & bc_or, (a & b_col) | (a & c_row)):
                report(f"meet-over-join distributivity fails around {int(a):#x}")
            if not np.array_equal(a | bc_and, (a | b_col) & (a | c_row)):
                report(f"join-over-meet distributivity fails around {int(a):#x}")
            if not np.array_equal((a & b_col) & c_row, a & bc_and):
                report(f"meet associativity fails around {int(a):#x}")
            if not np.array_equal((a | b_col) | c_row, a | bc_or):
                report(f"join associativity fails around {int(a):#x}")
    else:  # arbitrary-width fallback
        for a in masks:
            for b in masks:
                for c in masks:
                    if a & (b | c) != (a & b) | (a & c) or a | (b & c) != (a | b) & (a | c):
                        report("distributivity fails")
                    if (a & b) & c != a & (b & c) or (a | b) | c != a | (b | c):
                        report("associativity fails")
    return out


# -- classical-mechanics profile ----------------------------------------------------


def build_cm_model(
    states: Iterable[str],
    predicates: Iterable[str],
    truth: Mapping[tuple[str, str], bool],
    universe_sizes: int | Mapping[str, int] = 4,
) -> Model:
    """Model in which every extension is full or empty per the truth table.

    Each predicate is flagged as a property and paired with a generated
    ``<name>_perp`` partner carrying the complemented table.
    """
    states = tuple(states)
    base = tuple(predicates)
    if isinstance(universe_sizes, int):
        sizes = {s: universe_sizes for s in states}
    else:
        sizes = dict(universe_sizes)
    preds: list[PredicateInfo] = []
    extensions: dict[tuple[str, str], frozenset[int]] = {}
    for name in base:
        partner = f"{name}_perp"
        if partner in base:
            raise ModelValidationError(f"predicate name {partner!r} already taken")
        preds.append(PredicateInfo(name, True, partner))
        preds.append(PredicateInfo(partner, True, name))
        for s in states:
            full = frozenset(range(sizes[s]))
            holds = bool(truth.get((s, name), False))
            extensions[(s, name)] = full if holds else frozenset()
            extensions[(s, partner)] = frozenset() if holds else full
    return Model(tuple(preds), states, sizes, extensions)


def check_cms(m: Model) -> bool:
    """Every property extension is the whole universe or empty."""
    for p in m.predicates:
        if not p.is_property:
            continue
        for s in m.states:
            ext = m.extensions[(s, p.name)]
            if ext and len(ext) != m.universe_sizes[s]:
                return False
    return True


@dataclass
class CmtReport:
    ok: bool
    witness: Formula | None
    checked_classes: int

    def __bool__(self) -> bool:
        return self.ok


def check_cmt(
    m: Model, max_depth: int = 3, predicates: tuple[str, ...] | None = None
) -> CmtReport:
    """Every property-wff up to max_depth has a property predicate with its
    signature; on failure the witness is a formula with no such predicate.

    ``predicates`` restricts which property predicates the wffs are built
    from (witness search always covers the whole table); callers with
    large tables pass the generating fragment to keep the sweep bounded.
    """
    if max_depth > MAX_ENUM_DEPTH:
        raise DepthLimitExceeded(f"depth {max_depth} exceeds cap {MAX_ENUM_DEPTH}")
    space = SignatureSpace(m)
    property_names = m.property_names()
    classes = space.reachable_classes(predicates or property_names, max_depth)
    testable_masks = {space.pred_masks[name] for name in property_names}
    for mask, rep in classes.items():
        if mask not in testable_masks:
            return CmtReport(False, rep, len(classes))
    return CmtReport(True, None, len(classes))


def truth_collapse_violations(
    m: Model, max_depth: int = 3, predicates: tuple[str, ...] | None = None
) -> list[str]:
    """Property-wffs whose truth at some state depends on the object.

    Empty on any model satisfying the full-or-empty extension profile:
    there, truth and certain truth coincide.
    """
    if max_depth > MAX_ENUM_DEPTH:
        raise DepthLimitExceeded(f"depth {max_depth} exceeds cap {MAX_ENUM_DEPTH}")
    space = SignatureSpace(m)
    classes = space.reachable_classes(predicates or m.property_names(), max_depth)
    out = []
    for mask, rep in classes.items():
        for s in m.states:
            slice_ = mask & space.state_masks[s]
            if slice_ and slice_ != space.state_masks[s]:
                out.append(f"{render(rep)} is object-dependent in state {s}")
                break
    return out
