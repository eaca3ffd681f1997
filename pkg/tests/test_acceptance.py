"""End-to-end acceptance suite.

Each criterion prints one PASS/FAIL line (run pytest with -s or -rA to see
them) and enforces its stated time budget.  The corpora are seeded and
frozen: 20 classical models of up to 3 states, 3 predicates and universe
4, and 20 Hilbert specs alternating between dimension 2 and 3 whose
closures stay within 64 elements and whose states separate the closure.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest

from qlogic.bridge import (
    QTruth,
    QuantumModel,
    build_model,
    check_equiv_coincidence,
    check_q_trichotomy,
    check_qmt,
    check_quantum_equivalences,
    q_truth,
)
from qlogic.formulas import Pred
from qlogic.gaussian import GaussianRational
from qlogic.generate import random_classical_model, random_qm_spec
from qlogic.hilbert import Subspace, born, leq, ortho
from qlogic.lattice import (
    demorgan_violations,
    find_distributivity_failure,
    is_orthomodular,
    ortho_involution_violations,
)
from qlogic.models import (
    QuotientAlgebra,
    SignatureSpace,
    boolean_law_violations,
    check_cms,
    check_cmt,
    quotient_boolean,
    truth_collapse_violations,
)
from qlogic.propositions import check_connective_relations

from conftest import closed_cm_model

N_SEEDS = 20


def _report(number: int, title: str, ok: bool, detail: str = "") -> None:
    verdict = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {number} [{title}]: {verdict}" + (f" ({detail})" if detail else ""))
    assert ok, f"criterion {number} failed: {detail}"


@pytest.fixture(scope="module")
def classical_corpus():
    corpus = []
    for seed in range(N_SEEDS):
        corpus.append(
            random_classical_model(
                seed,
                n_states=1 + seed % 3,
                n_predicates=1 + seed % 3,
                universe=2 + seed % 3,
            )
        )
    return corpus


@pytest.fixture(scope="module")
def qm_corpus() -> list[QuantumModel]:
    corpus = []
    for seed in range(N_SEEDS):
        spec, _ = random_qm_spec(
            seed, dim=2 + seed % 2, n_properties=2 + seed % 2, closure_cap=64
        )
        corpus.append(build_model(spec))
    return corpus


def test_criterion_1_boolean_classical_quotient(classical_corpus):
    started = time.perf_counter()
    violations = []
    for i, model in enumerate(classical_corpus):
        algebra = quotient_boolean(model, max_depth=3)
        violations += [f"model {i}: {v}" for v in boolean_law_violations(algebra)]
    elapsed = time.perf_counter() - started
    _report(
        1,
        "Boolean classical quotient",
        not violations and elapsed < 10.0,
        f"{len(classical_corpus)} models, {len(violations)} violations, {elapsed:.2f}s",
    )


def test_criterion_2_connective_relations(classical_corpus):
    started = time.perf_counter()
    violations = []
    both_strict = 0
    for i, model in enumerate(classical_corpus):
        report = check_connective_relations(model, 3)
        for entry in report.entries:
            violations += [f"model {i}: {w}" for w in entry.violations]
        if report.entry("negation").strict > 0 and report.entry("join").strict > 0:
            both_strict += 1
    elapsed = time.perf_counter() - started
    _report(
        2,
        "connective/set-operation relations",
        not violations and both_strict >= 1 and elapsed < 30.0,
        f"{len(violations)} violations, {both_strict} models strict in both, {elapsed:.2f}s",
    )


def test_criterion_3_cm_collapse():
    started = time.perf_counter()
    problems = []
    models = [
        closed_cm_model(("S1",), universe=2),
        closed_cm_model(("S1", "S2"), universe=3),
        closed_cm_model(("S1", "S2", "S3"), universe=4),
    ]
    for i, model in enumerate(models):
        if not check_cms(model):
            problems.append(f"model {i}: full-or-empty profile fails")
        report = check_cmt(model, 3)
        if not report.ok:
            problems.append(f"model {i}: testability fails")
        if truth_collapse_violations(model, 3):
            problems.append(f"model {i}: truth differs from certain truth")
        space = SignatureSpace(model)
        classes = space.closed_classes(model.predicate_names(), 4096)
        props = frozenset(space.proposition(mask) for mask in classes)
        algebra = QuotientAlgebra(frozenset(model.states), props, {})
        problems += [f"model {i}: {v}" for v in boolean_law_violations(algebra)]
    elapsed = time.perf_counter() - started
    _report(
        3,
        "classical-mechanics collapse",
        not problems and elapsed < 10.0,
        f"{len(models)} models, {len(problems)} problems, {elapsed:.2f}s",
    )


def test_criterion_4_orthomodular_nondistributive(worked_qm, qm_corpus):
    started = time.perf_counter()
    problems = []
    dim3 = [qm for qm in qm_corpus if qm.spec.dim == 3]
    if len(dim3) < 5:
        problems.append(f"only {len(dim3)} three-dimensional specs")
    for qm in [worked_qm] + qm_corpus:
        lat = qm.lattice
        if len(lat) > 64 and qm is not worked_qm:
            problems.append("closure above 64 elements")
        if not is_orthomodular(lat):
            problems.append("orthomodularity fails")
        gens = [sub for _, sub in qm.spec.properties]
        awkward_pair = any(
            a != b and not leq(a, b) and not leq(b, a) and not leq(a, ortho(b))
            for a in gens
            for b in gens
        )
        witness = find_distributivity_failure(lat)
        if awkward_pair and witness is None:
            problems.append("non-orthogonal, non-nested generators without witness")
    elapsed = time.perf_counter() - started
    _report(
        4,
        "orthomodularity and nondistributivity",
        not problems and elapsed < 60.0,
        f"{1 + len(qm_corpus)} lattices ({len(dim3)} in dim 3), "
        f"{len(problems)} problems, {elapsed:.2f}s",
    )


def test_criterion_5_qmt_and_mutation_detection(qm_corpus):
    started = time.perf_counter()
    problems = []
    detected = 0
    injected = 0
    for i, qm in enumerate(qm_corpus):
        if not check_qmt(qm).ok:
            problems.append(f"model {i}: construction postconditions fail")
        fresh = build_model(qm.spec)
        rng = random.Random(f"mutate:{i}")
        for _ in range(3):
            state = rng.choice(fresh.model.states)
            pred = rng.choice(fresh.predicate_names)
            n = fresh.spec.universe_size
            original = fresh.model.extensions[(state, pred)]
            corrupted = frozenset({0}) if original != frozenset({0}) else frozenset({1})
            fresh.model.extensions[(state, pred)] = corrupted
            injected += 1
            if not check_qmt(fresh).ok:
                detected += 1
            fresh.model.extensions[(state, pred)] = original
    elapsed = time.perf_counter() - started
    _report(
        5,
        "theta agreement and mutation detection",
        not problems and detected == injected,
        f"{len(qm_corpus)} models, {detected}/{injected} mutations detected, {elapsed:.2f}s",
    )


def test_criterion_6_equivalence_coincidence(qm_corpus):
    started = time.perf_counter()
    violations = []
    for i, qm in enumerate(qm_corpus):
        report = check_equiv_coincidence(qm, 3)
        violations += [f"model {i}: {v}" for v in report.violations]
    elapsed = time.perf_counter() - started
    _report(
        6,
        "logical/physical equivalence coincidence",
        not violations,
        f"{len(qm_corpus)} models, {len(violations)} violations, {elapsed:.2f}s",
    )


def test_criterion_7_quantum_equivalences(worked_qm, qm_corpus):
    started = time.perf_counter()
    violations = []
    gap_witnesses = 0
    for i, qm in enumerate([worked_qm] + qm_corpus):
        report = check_quantum_equivalences(qm, 3)
        for entry in (report.demorgan, report.sasaki, report.conjunction_propositions):
            violations += [f"model {i}: {entry.relation}: {w}" for w in entry.violations]
        gap_witnesses += len(report.signature_gap_witnesses)
    elapsed = time.perf_counter() - started
    detail = (
        f"{1 + len(qm_corpus)} models, {len(violations)} violations, "
        f"{gap_witnesses} signature-gap witnesses, {elapsed:.2f}s"
    )
    if gap_witnesses == 0:
        detail += " (no conjunction signature gap found in this corpus)"
    _report(7, "quantum connective equivalences", not violations and elapsed < 30.0, detail)


def test_criterion_8_q_truth_trichotomy(worked_qm, qm_corpus):
    started = time.perf_counter()
    violations = []
    for i, qm in enumerate([worked_qm] + qm_corpus):
        report = check_q_trichotomy(qm, 2)
        violations += [f"model {i}: {v}" for v in report.violations]
    worked_ok = q_truth(worked_qm, Pred("Ez"), "Sx+") == QTruth.INDETERMINATE
    elapsed = time.perf_counter() - started
    _report(
        8,
        "three-valued verdicts and negation duality",
        not violations and worked_ok,
        f"{1 + len(qm_corpus)} models, {len(violations)} violations, {elapsed:.2f}s",
    )


def test_criterion_9_exact_arithmetic(worked_qm, qm_corpus):
    started = time.perf_counter()
    problems = []
    rng = random.Random("exactness")

    def fraction() -> Fraction:
        return Fraction(rng.randint(-3, 3), rng.randint(1, 3))

    def vector(dim: int):
        while True:
            vec = tuple(GaussianRational(fraction(), fraction()) for _ in range(dim))
            if any(not z.is_zero for z in vec):
                return vec

    checked = 0
    while checked < 1000:
        dim = rng.randint(2, 4)
        rank = rng.randint(1, dim - 1)
        sub = Subspace.span([vector(dim) for _ in range(rank)], dim)
        psi = vector(dim)
        total = born(psi, sub) + born(psi, ortho(sub))
        if total != 1:
            problems.append(f"complement probabilities sum to {total}")
        checked += 1
    for qm in [worked_qm] + qm_corpus:
        if ortho_involution_violations(qm.lattice):
            problems.append("orthocomplement is not an involution")
        if demorgan_violations(qm.lattice):
            problems.append("table duality fails")
    elapsed = time.perf_counter() - started
    _report(
        9,
        "exact rational arithmetic",
        not problems and elapsed < 30.0,
        f"{checked} projection pairs, {1 + len(qm_corpus)} lattices, {elapsed:.2f}s",
    )
