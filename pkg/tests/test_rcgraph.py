import json
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rcpieri.permutation import Permutation, all_permutations, identity, sigma, word_to_permutation
from rcpieri.polynomial import complete_homogeneous, monomial, schubert_ddiff, weak_compositions
from rcpieri.rcgraph import (
    Composition,
    NotReducedError,
    RcGraph,
    RcGraphParseError,
    bottom,
    compatible_sequences,
    compositions,
    enumerate_rc,
    enumerate_rc_by_words,
    graph_from_word,
    inverse_ladder_moves,
    is_compatible,
    ladder_moves,
    monomial_of,
    parse,
    permutation_of,
    render,
    serialize,
    sigma_graph,
    strand_labels,
    strand_pairs_crossing,
    word_and_sequence,
)

FIG1 = RcGraph([(1, 1), (1, 2), (2, 1), (4, 1)])
S4 = all_permutations(4)


def walk(cells, start_row, size=12):
    """Follow one strand from the west edge of its row to the top edge."""
    i, j, heading = start_row, 1, "east"  # heading = direction of travel into (i, j)
    while i >= 1:
        if (i, j) in cells:
            # crossings pass straight through
            nxt = heading
        else:
            nxt = "north" if heading == "east" else "east"
        if nxt == "east":
            j += 1
        else:
            i -= 1
        heading = nxt
        assert j <= size
    return j


def oracle_permutation(cells):
    cells = set(cells)
    n = max((i + j for i, j in cells), default=1) + 1
    return Permutation([walk(cells, k) for k in range(1, n + 1)])


def test_permutation_examples():
    assert permutation_of(RcGraph()) == identity()
    assert permutation_of(FIG1) == Permutation([3, 2, 1, 5, 4])
    assert permutation_of(RcGraph([(2, 1)])) == Permutation([1, 3, 2])


def test_tracing_matches_word_and_walk():
    for w in S4:
        for D in enumerate_rc(w):
            word, _ = word_and_sequence(D)
            assert permutation_of(D) == word_to_permutation(word) == oracle_permutation(D) == w


@given(st.sets(st.tuples(st.integers(1, 4), st.integers(1, 4)), max_size=8))
def test_tracing_arbitrary_cells(cells):
    word, _ = word_and_sequence(RcGraph(cells))
    assert permutation_of(RcGraph(cells)) == word_to_permutation(word) == oracle_permutation(cells)


def test_word_and_sequence():
    assert word_and_sequence(FIG1) == ((2, 1, 2, 4), (1, 1, 2, 4))
    assert word_and_sequence(RcGraph()) == ((), ())
    word, alpha = word_and_sequence(RcGraph([(1, 2), (1, 1), (2, 1)]))
    assert (word, alpha) == ((2, 1, 2), (1, 1, 2))
    assert word_to_permutation(word) == Permutation([3, 2, 1])


def test_compatible_sequences():
    assert compatible_sequences((2,)) == [(1,), (2,)]
    assert is_compatible((2, 1, 2, 4), (1, 1, 2, 4))
    assert not is_compatible((2, 1), (1, 2))  # increasing alpha on a descent
    assert not is_compatible((1,), (2,))  # alpha above the letter
    assert graph_from_word((2, 1, 2, 4), (1, 1, 2, 4)) == FIG1


def test_monomial_of():
    assert monomial_of(RcGraph()) == monomial([])
    assert monomial_of(FIG1) == monomial([2, 1, 0, 1])
    assert monomial_of(RcGraph([(2, 1)])) == monomial([0, 1])


def test_bottom():
    assert bottom(identity()) == RcGraph()
    assert bottom(Permutation([3, 2, 1, 5, 4])) == FIG1
    assert bottom(Permutation([1, 3, 2])) == RcGraph([(2, 1)])
    for w in S4:
        D = bottom(w)
        assert D.is_reduced() and D.permutation() == w


def test_ladder_moves():
    assert ladder_moves(RcGraph()) == []
    moves = ladder_moves(RcGraph([(2, 1)]))
    assert [g for _, g in moves] == [RcGraph([(1, 2)])]
    assert moves[0][0][2] == 0


def test_ladder_move_rejects_nonreduced():
    D = RcGraph([(1, 1), (1, 3), (2, 1), (2, 2)])
    assert not D.is_reduced()
    with pytest.raises(NotReducedError):
        ladder_moves(D)


def test_ladder_moves_preserve_permutation_and_invert():
    for w in S4:
        for D in enumerate_rc(w):
            for _, E in ladder_moves(D):
                assert E.is_reduced() and E.permutation() == w
                assert D in [g for _, g in inverse_ladder_moves(E)]


def test_ladder_move_with_ladder():
    # a size-1 move: (3,1) climbs past the pair at row 2 to (1,2)
    D = RcGraph([(2, 1), (2, 2), (3, 1)])
    assert D.is_reduced()
    outs = {g for (_, _, size), g in ladder_moves(D) if size == 1}
    assert RcGraph([(1, 2), (2, 1), (2, 2)]) in outs


def test_enumerate_small():
    assert enumerate_rc(identity()) == [RcGraph()]
    assert set(enumerate_rc(Permutation([1, 3, 2]))) == {RcGraph([(2, 1)]), RcGraph([(1, 2)])}
    assert enumerate_rc(Permutation([3, 2, 1])) == [RcGraph([(1, 1), (1, 2), (2, 1)])]
    assert len(enumerate_rc_by_words(Permutation([1, 3, 2]))) == 2


def test_enumerations_agree_s4():
    for w in S4:
        A = enumerate_rc(w)
        assert A == enumerate_rc_by_words(w)
        assert all(D.is_reduced() and D.permutation() == w for D in A)


def test_no_strand_pair_crosses_twice():
    for w in S4:
        for D in enumerate_rc(w):
            assert all(len(cells) == 1 for cells in strand_pairs_crossing(D).values())
            assert len(D) == w.length()
    # strands 2 and 4 meet at (1,3) and again at (2,2)
    twice = strand_pairs_crossing(RcGraph([(1, 1), (1, 3), (2, 1), (2, 2)]))
    assert any(len(cells) > 1 for cells in twice.values())


def test_rc_sum_equals_ddiff_s4():
    for w in S4:
        total = sum((monomial_of(D) for D in enumerate_rc(w)), monomial([]) * 0)
        assert total == schubert_ddiff(w, 4)


def test_strand_labels():
    D = RcGraph([(1, 1)])
    assert strand_labels(D, 2, 1) == (2, 3)
    assert strand_labels(D, 1, 2) == (1, 3)
    for i in range(1, 4):
        for j in range(1, 4):
            assert strand_labels(RcGraph(), i, j) == (i + j - 1, i + j)
    for i in range(1, 4):
        assert strand_labels(RcGraph(), i, 1)[0] == i


def test_compositions():
    assert compositions(2, 2) == [Composition((0, 2)), Composition((1, 1)), Composition((2, 0))]
    c = Composition((0, 1))
    assert (c.r, c.m, str(c)) == (2, 1, "0,1")
    assert c.monomial() == monomial([0, 1])
    with pytest.raises(ValueError):
        Composition((1, -1))


@pytest.mark.parametrize("r", range(1, 5))
@pytest.mark.parametrize("m", range(0, 5))
def test_sigma_graphs(r, m):
    graphs = enumerate_rc(sigma(r, m))
    rows = Counter(tuple(D.row_counts(r)) for D in graphs)
    assert len(graphs) == len(weak_compositions(m, r))
    assert all(v == 1 for v in rows.values())
    assert sum((monomial_of(D) for D in graphs), monomial([]) * 0) == complete_homogeneous(m, r)
    for comp in compositions(m, r):
        G = sigma_graph(r, comp)
        assert G in graphs
        assert monomial_of(G) == comp.monomial()


def test_sigma_graph_examples():
    assert sigma_graph(1, (3,)) == RcGraph([(1, 1), (1, 2), (1, 3)])
    with pytest.raises(ValueError):
        sigma_graph(2, (1, 1, 1))


def test_serialize():
    assert serialize(RcGraph((), window=3)) == '{"window":3,"crossings":[]}'
    assert serialize(FIG1) == '{"window":5,"crossings":[[1,1],[1,2],[2,1],[4,1]]}'
    for w in S4:
        for D in enumerate_rc(w):
            E = parse(serialize(D))
            assert E == D and E.window == D.window


def test_render():
    assert render(FIG1) == "\n".join(
        ["  12345", "1 ++...", "2 +....", "3 .....", "4 +....", "5 ....."]
    )


@pytest.mark.parametrize(
    "text, position",
    [
        ('{"window":3,"crossings":[[1,1]', None),
        ('{"window":3}', "$"),
        ('{"window":3,"crossings":5}', "$.crossings"),
        ('{"window":3,"crossings":[],"x":1}', "$"),
        ('{"window":3,"crossings":[[1,1],[0,2]]}', "$.crossings[1]"),
        ('{"window":3,"crossings":[[1,"a"]]}', "$.crossings[0]"),
        ('{"window":1,"crossings":[[1,1]]}', "$.window"),
        ("[]", 0),
    ],
)
def test_parse_errors(text, position):
    with pytest.raises(RcGraphParseError) as info:
        parse(text)
    if position is not None:
        assert info.value.position == position
    else:
        assert isinstance(info.value.position, int)


def test_window_validation():
    with pytest.raises(ValueError):
        RcGraph([(2, 2)], window=3)
    assert RcGraph([(2, 2)]).window == 4
    assert json.loads(serialize(RcGraph([(2, 2)])))["window"] == 4
