from __future__ import annotations

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from engelgraph.catalog import FAMILIES, GroupSpecExpr
from engelgraph.cli import EXIT_CAP, EXIT_OK, EXIT_USAGE, main
from engelgraph.cli.parser import ArityError, ParseError, UnknownFamily, parse_group_expr
from engelgraph.cli.store import append_records, decode_line, encode_line, read_store


def test_parse_examples():
    assert parse_group_expr("PSL(2,11)") == GroupSpecExpr("PSL", (2, 11))
    assert parse_group_expr("  Ex4 ( 7 , 3,19 ) ") == GroupSpecExpr("Ex4", (7, 3, 19))


@pytest.mark.parametrize("text,offset,expected", [
    ("A(6", 3, {")", ","}),
    ("A6)", 2, {"("}),
    ("(6)", 0, {"NAME"}),
    ("A(6,)", 4, {"INT"}),
    ("A(6) x", 5, {"EOF"}),
    ("A(-6)", 2, {"INT"}),
])
def test_parse_errors_report_offset(text, offset, expected):
    with pytest.raises(ParseError) as info:
        parse_group_expr(text)
    assert info.value.offset == offset
    assert info.value.expected == frozenset(expected)
    assert f"offset {offset}" in str(info.value)


def test_parse_error_message_format():
    with pytest.raises(ParseError, match="offset 3, expected '\\)' or ','"):
        parse_group_expr("A(6")


def test_unknown_family_and_arity():
    with pytest.raises(UnknownFamily):
        parse_group_expr("M(11)")
    with pytest.raises(ArityError):
        parse_group_expr("PSL(11)")


@given(st.sampled_from(sorted(FAMILIES)), st.data())
def test_round_trip(name, data):
    arity = FAMILIES[name][0]
    args = tuple(data.draw(st.lists(st.integers(0, 10 ** 6), min_size=arity, max_size=arity)))
    spec = GroupSpecExpr(name, args)
    assert parse_group_expr(str(spec)) == spec
    spaced = f" {name} ( " + " , ".join(map(str, args)) + " ) "
    assert parse_group_expr(spaced) == spec


@given(st.dictionaries(st.text(max_size=8), st.one_of(st.integers(), st.text(max_size=8), st.booleans(), st.none())))
def test_store_line_round_trip(rec):
    assert decode_line(encode_line(rec)) == rec


def test_store_detects_corruption(tmp_path):
    path = str(tmp_path / "r.jsonl")
    append_records(path, [{"expr": "A(5)", "v": 1}, {"expr": "A(6)", "v": 2}])
    lines = open(path).read().splitlines(True)
    lines[0] = lines[0].replace('"v":1', '"v":7')
    lines.append('{"expr": "A(7)"')  # truncated write
    open(path, "w").write("".join(lines))
    recs, corrupt = read_store(path)
    assert recs == [{"expr": "A(6)", "v": 2}]
    assert corrupt == [1, 3]


def test_analyze_json(capsys):
    assert main(["analyze", "S(4)", "--output-format", "json", "--diameter"]) == EXIT_OK
    rec = json.loads(capsys.readouterr().out)
    assert rec["strongly_connected"] and rec["vertex_count"] == 23
    assert rec["expr"] == "S(4)" and isinstance(rec["directed_diameter"], int)


def test_analyze_gamma_n(capsys):
    assert main(["analyze", "GL(2,3)", "--mode", "gamma_n", "--n", "2", "--output-format", "json"]) == EXIT_OK
    assert not json.loads(capsys.readouterr().out)["strongly_connected"]


def test_exit_codes(capsys):
    assert main(["analyze", "A(6"]) == EXIT_USAGE
    assert "offset 3" in capsys.readouterr().err
    assert main(["analyze", "S(1)"]) == EXIT_USAGE
    assert main(["analyze", "S(4)", "--mode", "gamma_n"]) == EXIT_USAGE
    assert main(["bogus"]) == EXIT_USAGE
    assert main(["analyze", "Ex4(7,3,19)"]) == EXIT_CAP


def test_survey_resumes(tmp_path, capsys):
    store = str(tmp_path / "psl.jsonl")
    assert main(["survey", "PSL2", "5..31", "--store", store]) == EXIT_OK
    out = capsys.readouterr().out
    assert "9 new record(s)" in out
    recs, corrupt = read_store(store)
    assert not corrupt
    weak = {int(r["expr"].split(",")[1].rstrip(")")) for r in recs if not r["strongly_connected"]}
    assert weak == {5, 13, 29}
    assert main(["survey", "PSL2", "5..31", "--store", store]) == EXIT_OK
    assert "0 new record(s)" in capsys.readouterr().out
    assert len(read_store(store)[0]) == 9


def test_survey_empty_range(tmp_path, capsys):
    store = str(tmp_path / "e.jsonl")
    assert main(["survey", "PSL2", "24..28", "--store", store]) == EXIT_OK
    assert "0 new record(s)" in capsys.readouterr().out


def test_export_deterministic(tmp_path, capsys):
    a, b = str(tmp_path / "a.txt"), str(tmp_path / "b.txt")
    assert main(["export", "A(5)", "--format", "edgelist", "-o", a]) == EXIT_OK
    assert main(["export", "A(5)", "--format", "edgelist", "-o", b]) == EXIT_OK
    ta, tb = open(a).read(), open(b).read()
    assert ta == tb
    assert ta.startswith("# A(5) gamma 59\n")
    edges = [tuple(map(int, line.split())) for line in ta.splitlines()[1:]]
    assert edges == sorted(edges) and all(u != v for u, v in edges)
    assert main(["export", "S(4)", "--format", "dot"]) == EXIT_OK
    dot = capsys.readouterr().out
    assert dot.startswith("# S(4) gamma 23\ndigraph engel {") and dot.rstrip().endswith("}")
