import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqdecomp import EqDecompError, WeightedGraph, decompose, load_graph, save_artifact
from eqdecomp.fold import FoldedGraph, fold_family
from eqdecomp.gershgorin import GershRegion, region
from eqdecomp.serialize import dumps, load_matrix, matrix_from_dict, matrix_to_dict, parse_edge_list
from helpers import FIG1, FIG1_EDGES, PHI


def test_edge_list_variants():
    G = parse_edge_list("", n=3)
    assert G.n == 3 and G.edges == ()
    G = parse_edge_list("1 2 0.5\n2 3 1+2i  # complex weight\n")
    assert G.n == 3
    assert G.edges[1][2] == 1 + 2j


def test_edge_list_error_names_line():
    with pytest.raises(EqDecompError, match="line 2"):
        parse_edge_list("1 2\n1 x\n")
    with pytest.raises(EqDecompError, match="line 1"):
        parse_edge_list("1 2 3 4\n")


def test_load_graph_text_and_json(tmp_path):
    txt = tmp_path / "g.txt"
    txt.write_text(FIG1_EDGES)
    G = load_graph(txt)
    js = tmp_path / "g.json"
    save_artifact(G, js)
    assert load_graph(js) == G
    np.testing.assert_array_equal(G.weight_matrix(), FIG1)


def test_bad_json_reports_location(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"n": 2, "edges": [[1, 2],]}')
    with pytest.raises(EqDecompError, match="line 1"):
        load_graph(p)
    p.write_text('{"n": 2}')
    with pytest.raises(EqDecompError, match="edges"):
        load_graph(p)


finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


@given(st.integers(1, 4), st.integers(1, 4), st.data())
@settings(max_examples=50)
def test_matrix_round_trip_is_exact(rows, cols, data):
    re_ = np.array(data.draw(st.lists(finite, min_size=rows * cols, max_size=rows * cols))).reshape(rows, cols)
    im_ = np.array(data.draw(st.lists(finite, min_size=rows * cols, max_size=rows * cols))).reshape(rows, cols)
    A = re_ + 1j * im_
    B = matrix_from_dict(json.loads(json.dumps(matrix_to_dict(A))))
    np.testing.assert_array_equal(B, A)


def test_matrix_from_dict_errors():
    with pytest.raises(EqDecompError):
        matrix_from_dict({"rows": 1, "cols": 2, "entries": [[1, 0]]})
    with pytest.raises(EqDecompError):
        matrix_from_dict({"rows": 1, "entries": []})
    with pytest.raises(EqDecompError):
        matrix_from_dict({"rows": 1, "cols": 1, "entries": [[1, 2, 3]]})


def test_region_and_fold_round_trip(tmp_path):
    reg = region(FIG1)
    p = tmp_path / "r.json"
    save_artifact(reg, p)
    assert GershRegion.from_dict(json.loads(p.read_text())) == reg
    for F in fold_family(FIG1, PHI.power(2)):
        assert FoldedGraph.from_dict(json.loads(dumps(F))) == F


def test_decomposition_output_is_deterministic(tmp_path):
    a = dumps(decompose(FIG1, PHI))
    b = dumps(decompose(FIG1.copy(), PHI))
    assert a == b
    doc = json.loads(a)
    assert doc["divisor_labels"] == [1, 2, 3]
    D = matrix_from_dict(doc["divisor"])
    np.testing.assert_array_equal(D, [[0, 3, 0], [1, 2, 2], [0, 1, 0]])
    p = tmp_path / "m.json"
    p.write_text(json.dumps({"matrix": matrix_to_dict(FIG1)}))
    np.testing.assert_array_equal(load_matrix(p), FIG1)


def test_dot_format_and_unknown_format():
    F = fold_family(FIG1, PHI.power(2))[1]
    assert save_artifact(F, fmt="dot").startswith("digraph")
    with pytest.raises(EqDecompError):
        save_artifact(F, fmt="yaml")


def test_graph_round_trip_complex_weights():
    G = WeightedGraph(3, ((1, 2, 0.1 + 0.2j), (3, 3, -7.0)))
    assert WeightedGraph.from_dict(json.loads(dumps(G))) == G
