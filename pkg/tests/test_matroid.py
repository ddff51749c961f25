import itertools

import pytest

from agshare import instances
from agshare.audit import klein_line_description, theorem5_agreement, theorem6_agreement
from agshare.code import LinearCode, dual_code, eval_code
from agshare.errors import PreconditionError
from agshare.funcspace import basis_genus0
from agshare.gf import field_new
from agshare.lsss import minimal_access_structure
from agshare.matroid import (CircuitSet, OracleSpec, circuits_from_code, is_circuit_of_columns,
                             matroid_self_dual, minimal_qualified_from_circuits, oracle_thm5,
                             oracle_thm6)


def rs52():
    return eval_code(basis_genus0(field_new(7), 1), range(5))


@pytest.fixture(scope="module")
def ex1_spec(ex1_scheme):
    S = ex1_scheme.provenance["curve"].group_structure()
    return OracleSpec.from_points(S, ex1_scheme.provenance["points"], 3, secret=0)


@pytest.fixture(scope="module")
def ex3():
    E = instances.example1_curve()
    D = instances.example3_points(E)
    return instances.example3_code(), OracleSpec.from_points(E.group_structure(), D, 4)


@pytest.fixture(scope="module")
def ex4():
    E = instances.hermitian_curve()
    D = instances.hermitian_points(E)
    return instances.example4_code(), OracleSpec.from_points(E.group_structure(), D, 4)


def test_parity_code():
    C = LinearCode(field_new(2), [[1, 1, 0], [0, 1, 1]])
    # the generator columns have the single circuit {0,1,2}: supports of the dual
    assert circuits_from_code(dual_code(C)).circuits == ((0, 1, 2),)
    assert circuits_from_code(C).circuits == ((0, 1), (0, 2), (1, 2))


def test_mds_circuits():
    cs = circuits_from_code(rs52())
    assert cs.circuits == tuple(itertools.combinations(range(5), 4))


def test_mds_not_matroid_self_dual():
    assert not matroid_self_dual(rs52())[0]


def test_antichain_enforced():
    with pytest.raises(ValueError):
        CircuitSet(3, ((0, 1), (0, 1, 2)))


def test_minimal_qualified_from_circuits():
    assert minimal_qualified_from_circuits(CircuitSet(3, ((0, 1, 2),))) == [(1, 2)]


def test_example1_circuits_give_access_structure(ex1_scheme):
    via_circuits = minimal_qualified_from_circuits(circuits_from_code(ex1_scheme.dual))
    assert tuple(via_circuits) == minimal_access_structure(ex1_scheme).minimal


def test_klein_circuits_give_line_description(klein):
    s = instances.klein_scheme()
    via_circuits = minimal_qualified_from_circuits(circuits_from_code(s.dual))
    assert sorted(via_circuits) == sorted(klein_line_description(klein))


def test_oracle_thm5_examples(ex1_spec):
    # positions in D equal the multiple minus one
    pos = {v: v - 1 for v in range(1, 10)}
    assert oracle_thm5(ex1_spec, [pos[2], pos[4]])
    assert oracle_thm5(ex1_spec, [pos[2], pos[3], pos[5]])
    assert not oracle_thm5(ex1_spec, [pos[2], pos[7]])
    with pytest.raises(ValueError):
        oracle_thm5(ex1_spec, [1])
    with pytest.raises(ValueError):
        oracle_thm5(ex1_spec, [0, 1, 2])


def test_oracle_thm5_exhaustive(ex1_scheme, ex1_spec):
    assert theorem5_agreement(ex1_scheme, minimal_access_structure(ex1_scheme), ex1_spec)


def test_oracle_thm6_examples(ex3, ex4):
    _, spec3 = ex3
    # D3 holds multiples 1,2,3,4,6,7,8,9 of the generator
    pos = {v: i for i, v in enumerate((1, 2, 3, 4, 6, 7, 8, 9))}
    assert oracle_thm6(spec3, [pos[v] for v in (1, 2, 8, 9)])
    assert oracle_thm6(spec3, [pos[v] for v in (1, 2, 3, 4)])
    _, spec4 = ex4
    idx = {c: i for i, c in enumerate(instances.HERMITIAN_ORDER)}
    assert oracle_thm6(spec4, [idx[(0, 1)], idx[(1, 0)], idx[(2, 2)]])


@pytest.mark.parametrize("which", ["ex3", "ex4"])
def test_oracle_thm6_exhaustive(which, ex3, ex4):
    C, spec = ex3 if which == "ex3" else ex4
    assert theorem6_agreement(spec, circuits_from_code(C))


def test_thm6_setup_checked(ex1_scheme):
    S = ex1_scheme.provenance["curve"].group_structure()
    spec = OracleSpec.from_points(S, ex1_scheme.provenance["points"], 4)
    with pytest.raises(PreconditionError):
        oracle_thm6(spec, [0, 1, 2, 3])


@pytest.mark.parametrize("which", ["ex3", "ex4"])
def test_self_dual_matroids(which, ex3, ex4):
    C, _ = ex3 if which == "ex3" else ex4
    verdict, mine, theirs = matroid_self_dual(C)
    assert verdict and mine.as_sets() == theirs.as_sets()


@pytest.mark.parametrize("which", ["ex1", "ex3", "ex4", "rs"])
def test_circuits_are_minimal_dependent_columns(which, ex1_scheme, ex3, ex4):
    C = {"ex1": lambda: ex1_scheme.dual, "ex3": lambda: ex3[0], "ex4": lambda: ex4[0],
         "rs": rs52}[which]()
    H = dual_code(C).columns()       # circuits of C live on parity-check columns
    for c in circuits_from_code(C).circuits:
        assert is_circuit_of_columns(C.field, H, c)
