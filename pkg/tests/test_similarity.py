import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from msextract.extract import CallGraph
from msextract.lexicon import TfIdfMatrix
from msextract.similarity import (
    SimilarityMatrix,
    class_similarity,
    semantic_similarity,
    structural_similarity,
    to_distance,
    write_matrix_csv,
)
from oracles import structural_pair

# A->B 2, B->A 1, C->A 1  (ids A=0, B=1, C=2)
FIXTURE_CALLS = [[0, 2, 0], [1, 0, 0], [1, 0, 0]]


def tfidf(rows):
    rows = np.asarray(rows, dtype=float)
    return TfIdfMatrix(tuple(f"t{i}" for i in range(rows.shape[1])), rows, (rows > 0).sum(axis=0))


def test_structural_fixture():
    s = structural_similarity(CallGraph(FIXTURE_CALLS)).values
    assert s[0, 1] == pytest.approx(0.75, abs=1e-9)
    assert s[0, 2] == pytest.approx(0.5, abs=1e-9)
    assert s[1, 2] == pytest.approx(0.0, abs=1e-9)
    assert np.array_equal(s, s.T)
    assert np.all(np.diag(s) == 1.0)


def test_self_calls_do_not_count():
    with_self = np.array(FIXTURE_CALLS)
    with_self[0, 0] = 9
    a = structural_similarity(CallGraph(with_self)).values
    b = structural_similarity(CallGraph(FIXTURE_CALLS)).values
    assert np.array_equal(a, b)


def test_no_calls_anywhere_is_identity():
    s = structural_similarity(CallGraph(np.zeros((3, 3), dtype=int))).values
    assert np.array_equal(s, np.eye(3))


def test_semantic_fixture():
    s = semantic_similarity(tfidf([[1, 1, 0], [1, 0, 0], [1, 1, 0], [0, 0, 1], [0, 0, 0]])).values
    assert s[0, 1] == pytest.approx(1 / math.sqrt(2), abs=1e-9)
    assert s[0, 2] == pytest.approx(1.0, abs=1e-9)
    assert s[0, 3] == pytest.approx(0.0, abs=1e-9)
    assert s[4, :4].tolist() == [0.0] * 4
    assert s[4, 4] == 1.0


def test_fused_fixture():
    st_ = SimilarityMatrix([[1, 0.75], [0.75, 1]], "structural")
    se = SimilarityMatrix([[1, 0.25], [0.25, 1]], "semantic")
    assert class_similarity(st_, se, 0.5).values[0, 1] == pytest.approx(0.5, abs=1e-9)
    assert class_similarity(st_, se, 1.0).values[0, 1] == 0.75
    assert class_similarity(st_, se, 0.0).values[0, 1] == 0.25


def test_distance_is_one_minus_similarity():
    cs = class_similarity(
        SimilarityMatrix([[1, 0.75], [0.75, 1]], "structural"), SimilarityMatrix([[1, 0.25], [0.25, 1]], "semantic"), 0.5
    )
    d = to_distance(cs).values
    assert d[0, 1] == pytest.approx(0.5) and d[0, 0] == 0.0


def test_dimension_mismatch_and_bad_alpha():
    a = SimilarityMatrix(np.eye(2), "structural")
    b = SimilarityMatrix(np.eye(3), "semantic")
    with pytest.raises(ValueError, match="dimension"):
        class_similarity(a, b, 0.5)
    with pytest.raises(ValueError, match="alpha"):
        class_similarity(a, SimilarityMatrix(np.eye(2), "semantic"), 1.5)


def test_matrices_are_read_only():
    s = structural_similarity(CallGraph(FIXTURE_CALLS))
    with pytest.raises(ValueError):
        s.values[0, 1] = 0.0


def test_csv_layout(tmp_path):
    write_matrix_csv(np.array([[1.0, 0.5], [0.5, 1.0]]), ["a.A", "a.B"], tmp_path / "m.csv")
    assert (tmp_path / "m.csv").read_text().splitlines() == ["class,a.A,a.B", "a.A,1.0,0.5", "a.B,0.5,1.0"]


def count_matrices(max_n=7):
    return st.integers(1, max_n).flatmap(lambda n: arrays(np.int64, (n, n), elements=st.integers(0, 6)))


@settings(max_examples=200, deadline=None)
@given(count_matrices())
def test_structural_matches_pairwise_oracle(counts):
    s = structural_similarity(CallGraph(counts)).values
    n = len(counts)
    for i in range(n):
        for j in range(n):
            if i != j:
                assert s[i, j] == pytest.approx(structural_pair(counts.tolist(), i, j), abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(count_matrices())
def test_structural_bounded_and_symmetric(counts):
    s = structural_similarity(CallGraph(counts)).values
    assert np.all((s >= 0) & (s <= 1))
    assert np.allclose(s, s.T)


@settings(max_examples=150, deadline=None)
@given(count_matrices(), st.data())
def test_structural_permutation_equivariant(counts, data):
    perm = np.array(data.draw(st.permutations(range(len(counts)))))
    s = structural_similarity(CallGraph(counts)).values
    sp = structural_similarity(CallGraph(counts[np.ix_(perm, perm)])).values
    assert np.allclose(sp, s[np.ix_(perm, perm)])


@settings(max_examples=150, deadline=None)
@given(count_matrices().filter(lambda c: len(c) >= 2), st.data())
def test_more_calls_between_a_pair_never_lowers_their_similarity(counts, data):
    n = len(counts)
    i = data.draw(st.integers(0, n - 1))
    j = data.draw(st.integers(0, n - 1).filter(lambda x: x != i))
    bumped = counts.copy()
    bumped[i, j] += data.draw(st.integers(1, 5))
    before = structural_similarity(CallGraph(counts)).values[i, j]
    after = structural_similarity(CallGraph(bumped)).values[i, j]
    assert after >= before - 1e-12


weight_rows = st.integers(1, 6).flatmap(
    lambda n: arrays(float, (n, 4), elements=st.sampled_from([0.0, 0.5, 1.0, 2.0, 3.7]))
)


@settings(max_examples=150, deadline=None)
@given(weight_rows)
def test_semantic_bounded_symmetric_unit_diagonal(rows):
    s = semantic_similarity(tfidf(rows)).values
    assert np.all((s >= 0) & (s <= 1))
    assert np.allclose(s, s.T)
    assert np.all(np.diag(s) == 1.0)


@settings(max_examples=150, deadline=None)
@given(count_matrices(6), st.floats(0, 1), st.data())
def test_nearest_by_distance_is_most_similar(counts, alpha, data):
    n = len(counts)
    rows = data.draw(arrays(float, (n, 3), elements=st.sampled_from([0.0, 1.0, 2.0])))
    cs = class_similarity(structural_similarity(CallGraph(counts)), semantic_similarity(tfidf(rows)), alpha)
    d = to_distance(cs).values
    assert np.all((d >= 0) & (d <= 1)) and np.all(np.diag(d) == 0)
    off = ~np.eye(n, dtype=bool)
    for i in range(n):
        if n > 1:
            assert d[i][off[i]].min() == pytest.approx(1 - cs.values[i][off[i]].max(), abs=1e-12)
