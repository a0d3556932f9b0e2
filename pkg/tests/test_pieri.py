import itertools

import pytest

from rcpieri.permutation import Permutation, all_permutations, identity, sigma
from rcpieri.pieri import (
    AbSequence,
    LedgerError,
    admissible_expansion,
    algorithm2,
    insert,
    inverse,
    inverse_for,
    is_admissible,
    ledger_insert_case1,
    ledger_insert_case2,
    ledger_product,
)
from rcpieri.rcgraph import Composition, RcGraph, compositions, enumerate_rc, monomial_of, sigma_graph

W213 = Permutation([2, 1, 3])


def test_ab_sequence():
    seq = AbSequence(((2, 3), (2, 4)))
    assert str(seq) == "(2,3) (2,4)"
    assert str(AbSequence()) == "()"
    assert seq.a_values == (2, 2) and seq.b_values == (3, 4)
    assert seq.check(2) is seq
    with pytest.raises(LedgerError):
        AbSequence(((2, 3), (1, 4))).check()
    with pytest.raises(LedgerError):
        AbSequence(((1, 3), (2, 3))).check()
    with pytest.raises(LedgerError):
        AbSequence(((1, 2),)).check(2)


def test_ledger_case1():
    assert ledger_insert_case1(AbSequence(), 1, 2).pairs == ((1, 2),)
    assert ledger_insert_case1(AbSequence(((1, 2),)), 1, 3).pairs == ((1, 2), (1, 3))
    assert ledger_insert_case1(AbSequence(((2, 5),)), 1, 4).pairs == ((1, 4), (2, 5))
    with pytest.raises(LedgerError):
        ledger_insert_case1(AbSequence(((1, 3),)), 2, 3)


def test_ledger_case2():
    out = ledger_insert_case2(AbSequence(((2, 4),)), 1, 5)
    assert out.pairs == ((2, 5), (2, 4))
    assert not out.problems()
    with pytest.raises(LedgerError):
        ledger_insert_case2(AbSequence(((2, 4),)), 1, 4)
    with pytest.raises(LedgerError):
        ledger_insert_case2(AbSequence(((2, 4),)), 2, 5)


def test_ledger_product():
    assert ledger_product(W213, [(2, 3)]) == Permutation([2, 3, 1])
    assert ledger_product(identity(), [(1, 2), (1, 3)]) == sigma(1, 2)


def test_insert_examples():
    D = RcGraph([(1, 1)])
    res = insert(D, 2, (0, 1))
    assert res.graph == RcGraph([(1, 1), (2, 1)])
    assert res.ledger.pairs == ((2, 3),)
    assert res.graph.permutation() == Permutation([2, 3, 1])

    graph, ledger = insert(D, 2, Composition((1, 0)))
    assert graph == RcGraph([(1, 1), (1, 2)])
    assert ledger.pairs == ((1, 3),)
    assert graph.permutation() == Permutation([3, 1, 2])

    graph, ledger = insert(RcGraph(), 1, (2,))
    assert graph == RcGraph([(1, 1), (1, 2)])
    assert ledger.pairs == ((1, 2), (1, 3))
    assert graph.permutation() == sigma(1, 2)


def test_insert_trace_lines():
    res = insert(RcGraph([(1, 1)]), 2, (0, 1))
    assert res.trace == ["ROW 2", "ADD (2,1) pair=(2,3) case=1", "ROW 1"]
    res = insert(RcGraph([(1, 1)]), 2, (1, 0))
    assert res.trace == ["ROW 1", "ADD (1,2) pair=(1,3) case=1"]


def test_insert_zero_composition():
    D = RcGraph([(1, 1)])
    graph, ledger = insert(D, 3, (0, 0, 0))
    assert graph == D and len(ledger) == 0


def test_insert_rejects_bad_input():
    with pytest.raises(ValueError):
        insert(RcGraph([(1, 1)]), 2, (1, 0, 0))
    with pytest.raises(ValueError):
        insert(RcGraph([(1, 1), (1, 3), (2, 1), (2, 2)]), 2, (1, 0))


def test_insert_into_empty_gives_sigma_graph():
    # inserting into the identity reproduces the sigma[r,m] graph itself
    for r in range(1, 4):
        for m in range(1, 4):
            for comp in compositions(m, r):
                graph, ledger = insert(RcGraph(), r, comp)
                assert graph == sigma_graph(r, comp)
                assert graph.permutation() == sigma(r, m)


def test_algorithm2_examples():
    assert algorithm2({(1, 1), (2, 1)}, [(2, 3)], 1) == RcGraph([(1, 1)])
    assert algorithm2({(1, 1)}, [], 1) == RcGraph([(1, 1)])


def test_inverse_example():
    D, comp, log = inverse(RcGraph([(1, 1), (2, 1)]), W213, 2, AbSequence(((2, 3),)))
    assert D == RcGraph([(1, 1)])
    assert comp == Composition((0, 1))
    assert log == ["ROW 1", "ROW 2", "DEL (2,1) pair=(2,3)"]


def test_inverse_rejects_wrong_ledger():
    with pytest.raises(ValueError):
        inverse(RcGraph([(1, 1), (2, 1)]), W213, 2, AbSequence(((1, 3),)))


def test_inverse_for_looks_up_ledger():
    D, comp, _ = inverse_for(RcGraph([(1, 1), (1, 2)]), W213, 2, 1)
    assert D == RcGraph([(1, 1)]) and comp.parts == (1, 0)


def test_expansion_examples():
    assert [wp for wp, _ in admissible_expansion(W213, 2, 1)] == [
        Permutation([2, 3, 1]),
        Permutation([3, 1, 2]),
    ]
    assert admissible_expansion(W213, 2, 0) == [(W213, AbSequence())]
    for r in range(1, 4):
        for m in range(1, 4):
            [(wp, _)] = admissible_expansion(identity(), r, m)
            assert wp == sigma(r, m)


def test_chain_condition_matters():
    w, wp = Permutation([2, 3, 1]), Permutation([1, 5, 2, 4, 3])
    pairs = [(1, 3), (2, 5)]
    assert ledger_product(w, pairs) == wp
    assert is_admissible(w, wp, 2, pairs, chain=False)
    assert not is_admissible(w, wp, 2, pairs)


def test_roundtrip_s3():
    for w in all_permutations(3):
        for r in range(1, 3):
            for m in range(1, 3):
                expansion = dict(admissible_expansion(w, r, m))
                for D in enumerate_rc(w):
                    for comp in compositions(m, r):
                        res = insert(D, r, comp, verify=True)
                        assert res.graph.is_reduced()
                        assert expansion[res.graph.permutation()] == res.ledger
                        assert monomial_of(res.graph) == monomial_of(D) * comp.monomial()
                        back, bcomp, _ = inverse(res.graph, w, r, res.ledger, verify=True)
                        assert back == D and bcomp == comp


def test_mid_run_states_reduce_to_w():
    w = Permutation([1, 3, 2, 4])
    for D in enumerate_rc(w):
        for comp in compositions(2, 3):
            states = []
            insert(D, 3, comp, on_row_done=lambda c, l, row: states.append((c, l, row)))
            for cells, ledger, row in states:
                G = algorithm2(cells, ledger, row, w=w, r=3, verify=True)
                assert G.is_reduced() and G.permutation() == w


def test_ledger_invariants_hold_on_s4():
    for w, r, m in itertools.product(all_permutations(4), (2, 3), (2,)):
        for D in enumerate_rc(w):
            for comp in compositions(m, r):
                ledger = insert(D, r, comp).ledger
                assert not ledger.problems(r)
