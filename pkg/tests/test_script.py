"""Tests for the script and sidecar text formats."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lazy_sssp.exceptions import ScriptParseError
from lazy_sssp.graph import (
    DistAnswer,
    DistQuery,
    Insert,
    PathAnswer,
    PathQuery,
    ThresholdAnswer,
    UpdateScript,
)
from lazy_sssp.script import ScriptSerializer, dense_script, random_script


class TestParseScript:
    def test_basic(self):
        s = ScriptSerializer.parse_script("n 3\ni 0 1 1\nq 1\n")
        assert s.n == 3
        assert s.source == 0
        assert s.events == [Insert(0, 1, 1), DistQuery(1)]

    def test_bytes_comments_and_defaults(self):
        text = b"# header follows\nn 4  # four vertices\ns 2\n\ni 2 3\ni 3 1 7\np 1\n"
        s = ScriptSerializer.parse_script(text)
        assert s.source == 2
        assert s.events == [Insert(2, 3, 1), Insert(3, 1, 7), PathQuery(1)]

    @pytest.mark.parametrize(
        "text, line, column",
        [
            ("n 2\ni 0 0 1\n", 2, 5),
            ("i 0 1\n", 1, 1),
            ("n 2\ni 0 5\n", 2, 5),
            ("n 2\ni 0 1 0\n", 2, 7),
            ("n 2\ni 0 x\n", 2, 5),
            ("n 2\nz 1\n", 2, 1),
            ("n 2\nq\n", 2, 1),
            ("n 2\ni 0 1\ns 1\n", 3, 1),
            ("n 2\nn 3\n", 2, 1),
        ],
    )
    def test_errors_carry_location(self, text, line, column):
        with pytest.raises(ScriptParseError) as info:
            ScriptSerializer.parse_script(text)
        assert info.value.line == line
        assert info.value.column == column
        assert str(info.value).startswith(f"line {line}, column {column}:")

    def test_missing_header(self):
        with pytest.raises(ScriptParseError, match="header"):
            ScriptSerializer.parse_script("# nothing here\n")

    def test_self_loop_message(self):
        with pytest.raises(ScriptParseError, match="self-loop"):
            ScriptSerializer.parse_script("n 2\ni 0 0 1\n")

    @pytest.mark.parametrize(
        "data, line, column",
        [(b"n 2\ni 0 \xff\n", 2, 5), (b"\xc3(\n", 1, 1), (b"n 2\n# \xe9t\xe9\n", 2, 3)],
    )
    def test_bad_utf8_is_located(self, data, line, column):
        with pytest.raises(ScriptParseError, match="invalid UTF-8") as info:
            ScriptSerializer.parse_script(data)
        assert (info.value.line, info.value.column) == (line, column)

    def test_bad_utf8_in_answers(self):
        with pytest.raises(ScriptParseError) as info:
            ScriptSerializer.parse_answers(b"d 1 2\nd \x80 3\n")
        assert (info.value.line, info.value.column) == (2, 3)

    @given(
        st.integers(2, 12).flatmap(
            lambda n: st.tuples(st.just(n), st.integers(0, 200), st.integers(1, 9))
        )
    )
    def test_dump_then_parse(self, params):
        n, seed, w = params
        s = random_script(n, 30, seed, max_weight=w)
        assert ScriptSerializer.parse_script(ScriptSerializer.dump_script(s)) == s


class TestAnswers:
    def test_format(self):
        answers = [
            DistAnswer(3, 4),
            DistAnswer(2, math.inf),
            PathAnswer(3, (0, 1, 3)),
            PathAnswer(2, ()),
            ThresholdAnswer(9, 12, True),
        ]
        text = ScriptSerializer.format_answers(answers)
        assert text == "d 3 4\nd 2 inf\nP 3 2 0 1 3\nP 2 -1\ne 9 12 1\n"
        assert ScriptSerializer.parse_answers(text) == answers

    @pytest.mark.parametrize(
        "text", ["d 1\n", "P 1 2 0 1\n", "e 1 5 2\n", "x 1 2\n", "d 1 -3\n"]
    )
    def test_malformed(self, text):
        with pytest.raises(ScriptParseError):
            ScriptSerializer.parse_answers(text)


class TestFiles:
    def test_sidecar_written_and_loaded(self, tmp_path):
        s = UpdateScript(3, 0, [Insert(0, 1), DistQuery(1)], expected=[DistAnswer(1, 1)])
        path = tmp_path / "tiny.txt"
        ScriptSerializer.save_to_file(s, path)
        assert (tmp_path / "tiny.txt.expected").read_text() == "d 1 1\n"
        loaded = ScriptSerializer.load_from_file(path)
        assert loaded.expected == [DistAnswer(1, 1)]
        assert loaded.events == s.events

    def test_no_sidecar(self, tmp_path):
        path = tmp_path / "plain.txt"
        ScriptSerializer.save_to_file(UpdateScript(2, 0, [DistQuery(1)]), path)
        assert ScriptSerializer.load_from_file(path).expected is None

    def test_explicit_sidecar(self, tmp_path):
        path = tmp_path / "s.txt"
        path.write_text("n 2\nq 1\n")
        other = tmp_path / "answers"
        other.write_text("d 1 inf\n")
        assert ScriptSerializer.load_from_file(path, other).expected == [DistAnswer(1, math.inf)]


class TestGenerators:
    def test_random_script_is_seeded(self):
        assert random_script(10, 50, 7) == random_script(10, 50, 7)
        assert random_script(10, 50, 7) != random_script(10, 50, 8)

    def test_random_script_weights(self):
        s = random_script(10, 100, 1, max_weight=5, query_rate=0.0)
        assert s.query_count == 0
        assert all(1 <= e.w <= 5 for e in s.events)

    def test_dense_script_covers_every_pair(self):
        s = dense_script(6, seed=3, query_every=5)
        g = s.final_graph()
        assert g.m == 6 * 5
        assert s.query_count == 30 // 5
