from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from qlogic.errors import DepthLimitExceeded, FormulaSyntaxError
from qlogic.formulas import (
    And,
    LanguageTag,
    Not,
    Or,
    Pred,
    QAnd,
    QImp,
    QNot,
    QOr,
    classify,
    depth,
    enumerate_formulas,
    parse,
    render,
)


def test_parse_classical():
    assert parse("E & ~F") == And(Pred("E"), Not(Pred("F")))


def test_parse_quantum_grouping():
    assert parse("E |q (F &q G)") == QOr(Pred("E"), QAnd(Pred("F"), Pred("G")))


def test_parse_unbalanced_parenthesis_position():
    with pytest.raises(FormulaSyntaxError) as err:
        parse("E & (F")
    assert err.value.position == 7


def test_parse_unknown_token_position():
    with pytest.raises(FormulaSyntaxError) as err:
        parse("E + F")
    assert err.value.position == 3


def test_parse_dangling_operator():
    with pytest.raises(FormulaSyntaxError):
        parse("E &")


def test_parse_precedence_and_associativity():
    # unary > conjunction > disjunction > implication, binaries left-assoc
    assert parse("~E & F | G") == Or(And(Not(Pred("E")), Pred("F")), Pred("G"))
    assert parse("E | F | G") == Or(Or(Pred("E"), Pred("F")), Pred("G"))
    assert parse("E ->q F ->q G") == QImp(QImp(Pred("E"), Pred("F")), Pred("G"))
    assert parse("E |q F ->q G") == QImp(QOr(Pred("E"), Pred("F")), Pred("G"))


def test_parse_maximal_munch():
    assert parse("E&qF") == QAnd(Pred("E"), Pred("F"))
    assert parse("E & qF") == And(Pred("E"), Pred("qF"))


def test_render_examples():
    assert render(And(Pred("E"), Not(Pred("F")))) == "E & ~F"
    assert render(QImp(Pred("E"), Pred("F"))) == "E ->q F"
    assert render(Or(And(Pred("E"), Pred("F")), Pred("G"))) == "E & F | G"


def test_render_needs_parens_on_right_assoc_break():
    f = Or(Pred("E"), QOr(Pred("F"), Pred("G")))
    assert render(f) == "E | (F |q G)"
    assert parse(render(f)) == f


def test_classify_examples():
    props = {"E", "F"}
    assert classify(And(Pred("E"), Pred("F")), props) is LanguageTag.PROPERTY_WFF
    assert classify(QAnd(Pred("E"), Pred("F")), props) is LanguageTag.PURE_QWFF
    assert classify(QNot(And(Pred("E"), Pred("F"))), props) is LanguageTag.MIXED
    assert classify(And(Pred("E"), Pred("G")), props) is LanguageTag.EFFECT_WFF
    assert classify(QAnd(Pred("E"), Pred("G")), props) is LanguageTag.MIXED
    assert classify(Pred("E"), props) is LanguageTag.PROPERTY_WFF


def test_classify_stable_under_flag_preserving_renaming():
    f = QImp(Pred("E"), QAnd(Pred("F"), Pred("E")))
    g = QImp(Pred("X"), QAnd(Pred("Y"), Pred("X")))
    assert classify(f, {"E", "F"}) == classify(g, {"X", "Y"})


def test_enumerate_depth_zero_and_one():
    assert list(enumerate_formulas(["E"], 0)) == [Pred("E")]
    e = Pred("E")
    assert list(enumerate_formulas(["E"], 1)) == [e, Not(e), And(e, e), Or(e, e)]


def brute_force_count(k: int, max_depth: int, unary: int, binary: int) -> int:
    # independent recursive tree count: a tree of depth <= d is a leaf or a
    # connective over trees of depth <= d-1
    total = k
    for _ in range(max_depth):
        total = k + unary * total + binary * total * total
    return total


@pytest.mark.parametrize(
    "names,depth_cap,family,unary,binary",
    [
        (["E", "F"], 2, "quantum", 1, 3),
        (["E", "F"], 2, "classical", 1, 2),
        (["E"], 3, "classical", 1, 2),
        (["E", "F", "G"], 2, "quantum", 1, 3),
    ],
)
def test_enumerate_count_matches_recursive_oracle(names, depth_cap, family, unary, binary):
    formulas = list(enumerate_formulas(names, depth_cap, family))
    assert len(formulas) == brute_force_count(len(names), depth_cap, unary, binary)
    assert len(set(formulas)) == len(formulas)  # no structural duplicates
    assert all(depth(f) <= depth_cap for f in formulas)


def test_enumerate_deterministic():
    a = list(enumerate_formulas(["E", "F"], 2, "quantum"))
    b = list(enumerate_formulas(["E", "F"], 2, "quantum"))
    assert a == b


def test_enumerate_depth_guard():
    with pytest.raises(DepthLimitExceeded):
        list(enumerate_formulas(["E"], 5))


def test_round_trip_over_enumeration():
    for f in enumerate_formulas(["E", "F"], 2, "classical"):
        assert parse(render(f)) == f
    for f in enumerate_formulas(["E", "F"], 2, "quantum"):
        assert parse(render(f)) == f


def _formulas(names=("E", "F", "Gx", "q2")):
    leaves = st.sampled_from([Pred(n) for n in names])

    def extend(children):
        return st.one_of(
            st.builds(Not, children),
            st.builds(QNot, children),
            st.builds(And, children, children),
            st.builds(Or, children, children),
            st.builds(QAnd, children, children),
            st.builds(QOr, children, children),
            st.builds(QImp, children, children),
        )

    return st.recursive(leaves, extend, max_leaves=12)


@given(_formulas())
def test_round_trip_property(f):
    assert parse(render(f)) == f
