import numpy as np
import pytest

import graphbench.graph as gr
from graphbench.kronecker import EdgeList
from graphbench.errors import VertexBoundsError, DomainError, ConsistencyError, GraphValidationError


def test_star_neighbors(star):
    for repr in gr.REPRESENTATIONS:
        g = gr.build(star, repr)
        assert g.neighbors(0) == [(1, 1.), (2, 1.), (3, 1.)]
        assert gr.neighbors(g, 2) == [(0, 1.)]
        assert g.num_entries == 6
        assert g.num_edges_input == 3


def test_self_loop_and_repeats(messy):
    for repr in gr.REPRESENTATIONS:
        g = gr.build(messy, repr)
        # Self-loop (2, 2) once, repeated (1, 2) twice, sorted by weight
        assert g.neighbors(2) == [(1, 0.25), (1, 0.75), (2, 0.1), (3, 1.)]
        assert g.neighbors(0) == [(1, 0.2), (1, 0.5), (3, 2.5)]
        assert g.neighbors(6) == []
        assert g.degree(6) == 0
        assert g.num_entries == 2 * messy.count - 2


def test_bounds(star):
    for repr in gr.REPRESENTATIONS:
        g = gr.build(star, repr)
        for u in (-1, 4):
            with pytest.raises(VertexBoundsError):
                g.neighbors(u)
            with pytest.raises(IndexError):
                g.degree(u)


def test_csr_trailing_empty_rows():
    g = gr.build(EdgeList(5, [0], [1], [0.5]), 'csr')
    assert g.row_offsets.tolist() == [0, 1, 2, 2, 2, 2]
    assert g.col_indices.tolist() == [1, 0]
    with pytest.raises(ValueError):
        g.row_offsets[0] = 1


def test_representations_agree(kronecker):
    rng = np.random.default_rng(11)
    for i in range(50):
        scale = 12 if i == 0 else int(rng.integers(2, 10))
        e = kronecker(scale, int(rng.choice([1, 4, 16])), seed=i)
        csr = gr.build(e, 'csr')
        adj = gr.build(e, 'adjmap')
        assert np.array_equal(csr.degrees(), adj.degrees())
        for u in range(e.num_vertices):
            assert np.array_equal(csr.neighbor_ids(u), adj.neighbor_ids(u))
            assert np.array_equal(csr.neighbor_weights(u), adj.neighbor_weights(u))


def test_neighbors_lists_agree(kronecker):
    e = kronecker(7, 8, seed=2)
    csr = gr.build(e, 'csr')
    adj = gr.build(e, 'adjmap')
    for u in range(e.num_vertices):
        assert csr.neighbors(u) == adj.neighbors(u)


def test_gather(kronecker):
    e = kronecker(8, 8, seed=4)
    vs = np.array([5, 0, 17, 5, 200])
    for repr in gr.REPRESENTATIONS:
        g = gr.build(e, repr)
        src, dst = g.gather(vs)
        expect = np.concatenate([g.neighbor_ids(v) for v in vs])
        assert np.array_equal(dst, expect)
        assert np.array_equal(src, np.repeat(vs, [g.degree(v) for v in vs]))
        src, dst = g.gather([])
        assert len(src) == len(dst) == 0


@pytest.mark.parametrize('repr', gr.REPRESENTATIONS)
def test_parallel_build_deterministic(kronecker, repr):
    for seed in range(4):
        e = kronecker(9, 16, seed=seed)
        ref = gr.build(e, repr, workers=1)
        for workers in (2, 4, 8):
            assert gr.build(e, repr, workers=workers) == ref


def test_partition_bounds():
    assert gr.parallel_partition_bounds(10, 3) == [(0, 4), (4, 7), (7, 10)]
    assert gr.parallel_partition_bounds(2, 4) == [(0, 1), (1, 2), (2, 2), (2, 2)]
    assert gr.parallel_partition_bounds(0, 1) == [(0, 0)]
    with pytest.raises(DomainError):
        gr.parallel_partition_bounds(10, 0)


def _star7():
    # Row 0 holds 7 of the 14 sorted entries
    return EdgeList(8, [0] * 7, list(range(1, 8)), [0.5] * 7)


def test_boundary_row_fragments():
    e = _star7()
    src, dst, w = gr._sorted_entries(e.sources, e.targets, e.weights)
    bounds = gr.parallel_partition_bounds(len(src), 3)
    assert bounds == [(0, 5), (5, 10), (10, 14)]
    frags = [gr.csr_fragment(src, dst, w, lo, hi, e.num_vertices) for lo, hi in bounds]
    # Both the first and the second fragment claim row 0
    assert frags[0].rows.tolist() == [0]
    assert frags[0].row_ends.tolist() == [5]
    assert frags[1].rows.tolist() == [0, 1, 2, 3]
    assert frags[1].row_ends.tolist() == [7, 8, 9, 10]
    g = gr.merge_boundary_rows(frags, num_edges_input=e.count)
    assert g.row_offsets.tolist() == [0, 7, 8, 9, 10, 11, 12, 13, 14]
    assert g == gr.build(e, 'csr')
    assert gr.build(e, 'csr', workers=3) == g


def test_merge_inconsistent():
    e = _star7()
    src, dst, w = gr._sorted_entries(e.sources, e.targets, e.weights)
    frags = [gr.csr_fragment(src, dst, w, lo, hi, e.num_vertices) for lo, hi in [(0, 5), (5, 10), (10, 14)]]
    with pytest.raises(ConsistencyError):
        gr.merge_boundary_rows([])
    with pytest.raises(ConsistencyError):
        gr.merge_boundary_rows([frags[0], frags[2]])
    with pytest.raises(ConsistencyError):
        gr.merge_boundary_rows(frags[1:])
    # A fragment reaching back before the shared row
    bad = gr.CsrFragment(5, 10, [0, 1], [7, 8], dst[5:10], w[5:10], e.num_vertices)
    late = gr.CsrFragment(0, 5, [1], [5], dst[0:5], w[0:5], e.num_vertices)
    with pytest.raises(ConsistencyError):
        gr.merge_boundary_rows([late, bad])


def test_build_errors(star):
    with pytest.raises(DomainError):
        gr.build(star, 'matrix')
    with pytest.raises(DomainError):
        gr.build(star, 'csr', workers=0)


def test_csr_invariants():
    with pytest.raises(GraphValidationError):
        gr.CsrGraph(2, [0, 2, 1], [1, 0], [1., 1.])
    with pytest.raises(GraphValidationError):
        gr.CsrGraph(2, [0, 1], [1], [1.])


def test_non_integer_vertex(star):
    for repr in gr.REPRESENTATIONS:
        g = gr.build(star, repr)
        for u in (1.5, 1.0, '1', None):
            with pytest.raises(VertexBoundsError):
                g.neighbors(u)
        assert g.degree(np.int32(0)) == 3
    with pytest.raises(VertexBoundsError):
        gr.AdjMapGraph(3, {0.5: ([1], [1.])})


def test_csr_exact():
    e = EdgeList(4, [0, 0, 2], [1, 2, 3], [0.5, 0.25, 1.])
    for workers in (1, 2, 3):
        g = gr.build(e, 'csr', workers=workers)
        assert g.row_offsets.tolist() == [0, 2, 3, 5, 6]
        assert g.col_indices.tolist() == [1, 2, 0, 0, 3, 2]
        assert g.edge_weights.tolist() == [0.5, 0.25, 0.5, 0.25, 1., 1.]


def test_csr_no_edges():
    g = gr.build(EdgeList(3, [], [], []), 'csr')
    assert g.row_offsets.tolist() == [0, 0, 0, 0]
    assert len(g.col_indices) == 0
    assert g.num_entries == 0
    assert gr.build(EdgeList(3, [], [], []), 'csr', workers=2) == g


def test_merge_single_fragment():
    e = EdgeList(4, [0, 0, 2], [1, 2, 3], [0.5, 0.25, 1.])
    src, dst, w = gr._sorted_entries(e.sources, e.targets, e.weights)
    frag = gr.csr_fragment(src, dst, w, 0, len(src), e.num_vertices)
    g = gr.merge_boundary_rows([frag], num_edges_input=e.count)
    assert g.row_offsets.tolist() == [0, 2, 3, 5, 6]
    assert g.col_indices.tolist() == frag.col_indices.tolist()
    assert g.edge_weights.tolist() == frag.edge_weights.tolist()
    assert g == gr.build(e, 'csr')
