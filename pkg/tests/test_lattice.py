from __future__ import annotations

import dataclasses

import pytest

from qlogic.errors import ClosureOverflow
from qlogic.gaussian import gr
from qlogic.hilbert import Subspace, join, meet, ortho
from qlogic.lattice import (
    close,
    demorgan_violations,
    find_distributivity_failure,
    is_orthomodular,
    ortho_involution_violations,
    orthomodularity_witness,
)

E1 = Subspace.span([(gr(1), gr(0))])
E2 = Subspace.span([(gr(0), gr(1))])
EX = Subspace.span([(gr(1), gr(1))])


def test_single_generator_gives_four_elements():
    lat = close([E1])
    assert len(lat) == 4
    assert {s.dim for s in lat.elements} == {0, 1, 2}


def test_two_skew_lines_give_six_elements():
    lat = close([E1, EX])
    assert len(lat) == 6
    one_dim = {s for s in lat.elements if s.dim == 1}
    assert one_dim == {E1, EX, ortho(E1), ortho(EX)}


def test_tables_match_direct_operations():
    lat = close([E1, EX])
    for i, a in enumerate(lat.elements):
        assert lat.elements[lat.ortho[i]] == ortho(a)
        for j, b in enumerate(lat.elements):
            assert lat.elements[lat.meet[i][j]] == meet(a, b)
            assert lat.elements[lat.join[i][j]] == join(a, b)


def test_closure_overflow_on_generic_triple():
    generic = [
        Subspace.span([(gr(1), gr(0), gr(0))]),
        Subspace.span([(gr(1), gr(1), gr(1))]),
        Subspace.span([(gr(1), gr(2), gr(4))]),
    ]
    with pytest.raises(ClosureOverflow) as err:
        close(generic, cap=16, dim=3)
    assert len(err.value.generators) == 3


def test_orthomodularity_of_closures():
    assert is_orthomodular(close([E1, EX]))
    assert is_orthomodular(close([E1]))


def test_orthomodular_law_instance_in_three_dims():
    a = Subspace.span([(gr(1), gr(0), gr(0))])
    b = Subspace.span([(gr(1), gr(0), gr(0)), (gr(0), gr(1), gr(0))])
    rebuilt = join(a, meet(b, ortho(a)))
    assert rebuilt == b


def test_corrupted_join_table_yields_witness():
    lat = close([E1, EX])
    rows = [list(r) for r in lat.join]
    victim = next(j for j in range(len(lat)) if j != lat.zero_index)
    rows[lat.zero_index][victim] = lat.zero_index  # join(0, x) must be x
    corrupted = dataclasses.replace(lat, join=tuple(tuple(r) for r in rows))
    witness = orthomodularity_witness(corrupted)
    assert witness is not None
    assert not is_orthomodular(corrupted)


def test_distributivity_witness_in_two_dims():
    # a meet (b join c) = a, but (a meet b) join (a meet c) = 0
    lat = close([E1, E2, EX])
    witness = find_distributivity_failure(lat)
    assert witness is not None
    a, b, c = witness
    assert meet(a, join(b, c)) != join(meet(a, b), meet(a, c))


def test_boolean_fragment_has_no_distributivity_failure():
    assert find_distributivity_failure(close([E1])) is None


def test_commuting_lines_are_distributive():
    lines = [
        Subspace.span([(gr(1), gr(0), gr(0))]),
        Subspace.span([(gr(0), gr(1), gr(0))]),
    ]
    lat = close(lines, dim=3)
    assert len(lat) == 8
    assert find_distributivity_failure(lat) is None
    assert is_orthomodular(lat)


def test_table_laws_hold_exactly():
    lat = close([E1, EX])
    assert not ortho_involution_violations(lat)
    assert not demorgan_violations(lat)


def test_demorgan_detects_corruption():
    lat = close([E1, EX])
    rows = [list(r) for r in lat.meet]
    rows[lat.full_index][lat.zero_index] = lat.full_index  # meet(1, 0) must be 0
    corrupted = dataclasses.replace(lat, meet=tuple(tuple(r) for r in rows))
    assert demorgan_violations(corrupted)


def test_absorption_laws_in_tables():
    lat = close([E1, E2, EX])
    n = len(lat)
    for i in range(n):
        for j in range(n):
            assert lat.meet[i][lat.join[i][j]] == i
            assert lat.join[i][lat.meet[i][j]] == i


def test_close_rejects_mixed_dimensions():
    import pytest as _pytest
    from qlogic.errors import DimensionMismatch

    with _pytest.raises(DimensionMismatch):
        close([E1, Subspace.span([(gr(1), gr(0), gr(0))])])
