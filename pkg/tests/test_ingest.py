import io

import pytest
from hypothesis import given, strategies as st

from touristwalk.generators import watts_strogatz
from touristwalk.graph import Graph
from touristwalk.ingest import (EdgeListParseError, format_edge_list, graph_summary,
                                parse_edge_list, read_graph, write_edge_list)


def parse(text):
    return parse_edge_list(io.StringIO(text))


def test_konect_style_file(karate_path):
    g, doc = parse_edge_list(karate_path)
    assert (g.n, g.n_edges) == (34, 78)
    assert doc.id_map["1"] == 0 and doc.edge_count == 78
    assert doc.source_path == karate_path


def test_comments_extra_columns_and_cleanup():
    g, doc = parse("# snap header\n% konect\n\na b 1.0 17\nb c\nb a\nc c\n")
    assert g.n == 3 and g.edges().tolist() == [[0, 1], [1, 2]]
    assert (doc.raw_edge_count, doc.dropped_duplicates, doc.dropped_self_loops) == (4, 1, 1)
    assert doc.id_map == {"a": 0, "b": 1, "c": 2}


def test_bad_row_reports_line():
    with pytest.raises(EdgeListParseError) as err:
        parse("1 2\n% fine\n3\n")
    assert err.value.line == 3 and "line 3" in str(err.value)


def test_empty_input_is_an_error():
    with pytest.raises(EdgeListParseError):
        parse("% only comments\n")


def test_canonical_ids_out_of_range():
    with pytest.raises(EdgeListParseError):
        parse("% nodes 3\n0 5\n")


def test_bytes_and_missing_file(tmp_path):
    g, _ = parse_edge_list(b"0 1\n1 2\n")
    assert g.n_edges == 2
    with pytest.raises(OSError):
        read_graph(tmp_path / "nope.edges")


@st.composite
def graphs(draw):
    n = draw(st.integers(1, 15))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, edges)


@given(graphs())
def test_canonical_round_trip(g):
    text = format_edge_list(g, header="a comment")
    assert text.startswith("% a comment\n% nodes ")
    assert parse(text)[0] == g
    assert format_edge_list(parse(text)[0], header="a comment") == text


def test_write_read(tmp_path):
    g = watts_strogatz(50, 4, 0.2, 1)
    path = tmp_path / "g.edges"
    write_edge_list(g, path)
    assert read_graph(path) == g


def test_summary(karate_path):
    g, doc = parse_edge_list(karate_path)
    s = graph_summary(g, doc)
    assert s["N"] == 34 and s["edges"] == 78 and s["components"] == 1
    assert s["clustering"] == pytest.approx(0.5706, abs=1e-4)
    assert s["avg_path_length"] == pytest.approx(2.4082, abs=1e-4)
    assert graph_summary(Graph.from_edges(2, []))["warnings"]
