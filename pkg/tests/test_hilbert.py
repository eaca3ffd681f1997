from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qlogic.errors import DimensionMismatch, ZeroVector
from qlogic.gaussian import GaussianRational, gr
from qlogic.hilbert import Subspace, born, join, leq, meet, ortho, subspace_from_strings

E1 = Subspace.span([(gr(1), gr(0))])
E2 = Subspace.span([(gr(0), gr(1))])
EX = Subspace.span([(gr(1), gr(1))])


def test_ortho_standard_basis():
    assert ortho(E1) == E2


def test_ortho_involution():
    assert ortho(ortho(EX)) == EX


def test_ortho_complex_line():
    line = Subspace.span([(gr(1), gr(0, 1))])
    assert ortho(line) == Subspace.span([(gr(1), gr(0, -1))])


def test_meet_orthogonal_lines_is_zero():
    assert meet(E1, E2) == Subspace.zero(2)


def _rank(vectors, ambient):
    return Subspace.span(list(vectors), ambient).dim


def test_join_and_meet_of_skew_lines():
    # independent rank oracle: stacked bases of the two lines span rank 2
    assert _rank(E1.basis + EX.basis, 2) == 2
    assert join(E1, EX) == Subspace.full(2)
    assert meet(E1, EX) == Subspace.zero(2)


def test_absorption_when_nested():
    a = Subspace.span([(gr(1), gr(0), gr(0))])
    b = Subspace.span([(gr(1), gr(0), gr(0)), (gr(0), gr(1), gr(0))])
    assert meet(a, b) == a
    assert join(a, b) == b
    assert leq(a, b) and not leq(b, a)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        meet(E1, Subspace.full(3))


def test_canonical_form_is_basis_independent():
    a = Subspace.span([(gr(1), gr(2), gr(0)), (gr(0), gr(0), gr(1))])
    b = Subspace.span([(gr(2), gr(4), gr(3)), (gr(0), gr(0), gr(-1))])
    assert a == b
    assert hash(a) == hash(b)


def test_born_examples():
    assert born((gr(1), gr(0)), E1) == 1
    assert born((gr(1), gr(1)), E1) == Fraction(1, 2)
    assert born((gr(1), gr(0)), E2) == 0


def test_born_zero_vector():
    with pytest.raises(ZeroVector):
        born((gr(0), gr(0)), E1)


def test_born_zero_subspace():
    assert born((gr(1), gr(2)), Subspace.zero(2)) == 0


def test_subspace_literals():
    sub = subspace_from_strings([["1", "0+1i"], ["0", "0"]], 2)
    assert sub == Subspace.span([(gr(1), gr(0, 1))])


_fracs = st.fractions(min_value=-3, max_value=3, max_denominator=3)
_scalars = st.builds(GaussianRational, _fracs, _fracs)


def _vectors(dim):
    return st.tuples(*[_scalars] * dim).filter(lambda v: any(not z.is_zero for z in v))


@st.composite
def _spaces(draw, dim):
    nvecs = draw(st.integers(1, dim - 1))
    vecs = [draw(_vectors(dim)) for _ in range(nvecs)]
    return Subspace.span(vecs, dim)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_born_complement_sums_to_one(data):
    dim = data.draw(st.integers(2, 4))
    psi = data.draw(_vectors(dim))
    sub = data.draw(_spaces(dim))
    assert born(psi, sub) + born(psi, ortho(sub)) == 1


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_born_boundary_values_mean_membership(data):
    from qlogic.hilbert import contains_vector

    dim = data.draw(st.integers(2, 3))
    psi = data.draw(_vectors(dim))
    sub = data.draw(_spaces(dim))
    p = born(psi, sub)
    assert (p == 1) == contains_vector(sub, psi)
    assert (p == 0) == contains_vector(ortho(sub), psi)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_change_of_basis_preserves_canonical_form(data):
    dim = data.draw(st.integers(2, 3))
    sub = data.draw(_spaces(dim))
    # random invertible-ish recombination: scale and add rows
    rows = [list(r) for r in sub.basis]
    scale = data.draw(st.sampled_from([gr(2), gr(-1), gr(1, 1), gr(Fraction(1, 3))]))
    rows[0] = [scale * x for x in rows[0]]
    if len(rows) > 1:
        rows[1] = [a + b for a, b in zip(rows[1], rows[0])]
    assert Subspace.span([tuple(r) for r in rows], dim) == sub


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_order_reversal_and_modular_dimension_identity(data):
    dim = data.draw(st.integers(2, 3))
    a = data.draw(_spaces(dim))
    b = data.draw(_spaces(dim))
    assert leq(a, b) == leq(ortho(b), ortho(a))
    assert a.dim + b.dim == meet(a, b).dim + join(a, b).dim
    assert ortho(meet(a, b)) == join(ortho(a), ortho(b))
