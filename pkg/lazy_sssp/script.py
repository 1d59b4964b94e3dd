"""
Text formats for update scripts and answer sidecars.

Script lines::

    n <count>          header, first non-comment line
    s <vertex>         source, defaults to 0
    i <u> <v> [<w>]    insertion or weight decrease, w defaults to 1
    q <t>              distance query
    p <t>              path query

Sidecar lines::

    d <t> <value|inf>
    P <t> <k> <v0> ... <vk>    k = -1 with no vertices for an unreachable target
    e <t> <threshold> <0|1>

Everything after ``#`` on a line is a comment.
"""

import math
import random
import re
from pathlib import Path
from typing import Iterator, List, Optional, Tuple, Union

from lazy_sssp.exceptions import ScriptParseError, SsspError
from lazy_sssp.graph import (
    Answer,
    DistAnswer,
    DistQuery,
    Distance,
    Insert,
    PathAnswer,
    PathQuery,
    ThresholdAnswer,
    UpdateEvent,
    UpdateScript,
)

_TOKEN = re.compile(r"\S+")
SIDECAR_SUFFIX = ".expected"


def _decode(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        line = data.count(b"\n", 0, e.start) + 1
        column = e.start - (data.rfind(b"\n", 0, e.start) + 1) + 1
        raise ScriptParseError(f"invalid UTF-8 byte 0x{data[e.start]:02x}", line, column) from e


def _tokens(text: str) -> Iterator[Tuple[int, List[Tuple[int, str]]]]:
    """Yield ``(line_no, [(column, token), ...])`` for non-empty lines."""
    for line_no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = [(m.start() + 1, m.group()) for m in _TOKEN.finditer(body)]
        if toks:
            yield line_no, toks


def _int(token: Tuple[int, str], line_no: int, what: str) -> int:
    col, text = token
    try:
        value = int(text)
    except ValueError:
        raise ScriptParseError(f"{what} must be an integer, got {text!r}", line_no, col)
    if value < 0:
        raise ScriptParseError(f"{what} must be non-negative, got {value}", line_no, col)
    return value


def _vertex(token: Tuple[int, str], line_no: int, n: int) -> int:
    value = _int(token, line_no, "vertex")
    if value >= n:
        raise ScriptParseError(f"vertex {value} outside [0, {n})", line_no, token[0])
    return value


def _arity(toks: List[Tuple[int, str]], line_no: int, low: int, high: int) -> None:
    if not low <= len(toks) - 1 <= high:
        col = toks[high + 1][0] if len(toks) > high + 1 else toks[0][0]
        expected = str(low) if low == high else f"{low} to {high}"
        raise ScriptParseError(
            f"'{toks[0][1]}' takes {expected} arguments, got {len(toks) - 1}", line_no, col
        )


def format_distance(value: Distance) -> str:
    return "inf" if value == math.inf else str(int(value))


class ScriptSerializer:
    """Reads and writes update scripts and answer sidecars."""

    @staticmethod
    def parse_script(text: Union[str, bytes]) -> UpdateScript:
        """
        Parse an update script.

        Args:
            text: Script text, as ``str`` or UTF-8 bytes

        Returns:
            The parsed script with events in input order

        Raises:
            ScriptParseError: On a malformed line, with its location

        Examples:
            >>> s = ScriptSerializer.parse_script("n 3\\ni 0 1 1\\nq 1\\n")
            >>> len(s.events)
            2
        """
        if isinstance(text, bytes):
            text = _decode(text)

        n: Optional[int] = None
        source: Optional[int] = None
        events: List[UpdateEvent] = []

        for line_no, toks in _tokens(text):
            (col, op) = toks[0]
            if n is None:
                if op != "n":
                    raise ScriptParseError("missing header 'n <count>'", line_no, col)
                _arity(toks, line_no, 1, 1)
                n = _int(toks[1], line_no, "vertex count")
                if n < 1:
                    raise ScriptParseError("vertex count must be positive", line_no, toks[1][0])
                continue

            if op == "n":
                raise ScriptParseError("duplicate header", line_no, col)

            if op == "s":
                _arity(toks, line_no, 1, 1)
                if source is not None:
                    raise ScriptParseError("source given twice", line_no, col)
                if events:
                    raise ScriptParseError("source must precede all events", line_no, col)
                source = _vertex(toks[1], line_no, n)
            elif op == "i":
                _arity(toks, line_no, 2, 3)
                u = _vertex(toks[1], line_no, n)
                v = _vertex(toks[2], line_no, n)
                w = _int(toks[3], line_no, "weight") if len(toks) == 4 else 1
                if u == v:
                    raise ScriptParseError(f"self-loop on vertex {u}", line_no, toks[2][0])
                if w < 1:
                    raise ScriptParseError(f"weight must be >= 1, got {w}", line_no, toks[3][0])
                events.append(Insert(u, v, w))
            elif op == "q":
                _arity(toks, line_no, 1, 1)
                events.append(DistQuery(_vertex(toks[1], line_no, n)))
            elif op == "p":
                _arity(toks, line_no, 1, 1)
                events.append(PathQuery(_vertex(toks[1], line_no, n)))
            else:
                raise ScriptParseError(f"unknown directive {op!r}", line_no, col)

        if n is None:
            raise ScriptParseError("missing header 'n <count>'", 1, 1)
        try:
            return UpdateScript(n=n, source=source or 0, events=events)
        except SsspError as e:
            raise ScriptParseError(str(e), 1, 1)

    @staticmethod
    def dump_script(script: UpdateScript) -> str:
        """Serialize a script; ``parse_script(dump_script(s)) == s``."""
        lines = [f"n {script.n}", f"s {script.source}"]
        for event in script.events:
            if isinstance(event, Insert):
                lines.append(
                    f"i {event.u} {event.v}" if event.w == 1 else f"i {event.u} {event.v} {event.w}"
                )
            elif isinstance(event, DistQuery):
                lines.append(f"q {event.t}")
            else:
                lines.append(f"p {event.t}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def format_answer(answer: Answer) -> str:
        if isinstance(answer, DistAnswer):
            return f"d {answer.t} {format_distance(answer.value)}"
        if isinstance(answer, PathAnswer):
            k = len(answer.path) - 1
            return " ".join(["P", str(answer.t), str(k), *map(str, answer.path)])
        return f"e {answer.t} {answer.threshold} {int(answer.hit)}"

    @staticmethod
    def format_answers(answers: List[Answer]) -> str:
        return "".join(ScriptSerializer.format_answer(a) + "\n" for a in answers)

    @staticmethod
    def parse_answers(text: Union[str, bytes]) -> List[Answer]:
        """
        Parse an answer sidecar.

        Raises:
            ScriptParseError: On a malformed line
        """
        if isinstance(text, bytes):
            text = _decode(text)
        answers: List[Answer] = []
        for line_no, toks in _tokens(text):
            (col, op) = toks[0]
            if op == "d":
                _arity(toks, line_no, 2, 2)
                t = _int(toks[1], line_no, "target")
                raw = toks[2]
                value: Distance = math.inf if raw[1] == "inf" else _int(raw, line_no, "distance")
                answers.append(DistAnswer(t, value))
            elif op == "P":
                if len(toks) < 3:
                    raise ScriptParseError("path line needs a target and a length", line_no, col)
                t = _int(toks[1], line_no, "target")
                k = -1 if toks[2][1] == "-1" else _int(toks[2], line_no, "path length")
                verts = [_int(tok, line_no, "vertex") for tok in toks[3:]]
                if len(verts) != k + 1:
                    raise ScriptParseError(
                        f"path length {k} needs {k + 1} vertices, got {len(verts)}",
                        line_no,
                        toks[2][0],
                    )
                answers.append(PathAnswer(t, tuple(verts)))
            elif op == "e":
                _arity(toks, line_no, 3, 3)
                t = _int(toks[1], line_no, "target")
                threshold = _int(toks[2], line_no, "threshold")
                bit = _int(toks[3], line_no, "bit")
                if bit not in (0, 1):
                    raise ScriptParseError(f"bit must be 0 or 1, got {bit}", line_no, toks[3][0])
                answers.append(ThresholdAnswer(t, threshold, bool(bit)))
            else:
                raise ScriptParseError(f"unknown answer kind {op!r}", line_no, col)
        return answers

    @staticmethod
    def sidecar_path(filepath: Union[str, Path]) -> Path:
        filepath = Path(filepath)
        return filepath.with_name(filepath.name + SIDECAR_SUFFIX)

    @staticmethod
    def save_to_file(script: UpdateScript, filepath: Union[str, Path]) -> None:
        """
        Write a script, plus its ``.expected`` sidecar when answers are attached.
        """
        filepath = Path(filepath)
        filepath.write_text(ScriptSerializer.dump_script(script), encoding="utf-8")
        if script.expected is not None:
            ScriptSerializer.sidecar_path(filepath).write_text(
                ScriptSerializer.format_answers(script.expected), encoding="utf-8"
            )

    @staticmethod
    def load_from_file(
        filepath: Union[str, Path], expected: Optional[Union[str, Path]] = None
    ) -> UpdateScript:
        """
        Read a script and, if present, its sidecar.

        Args:
            filepath: Script path
            expected: Explicit sidecar path; defaults to ``<script>.expected``
                when that file exists

        Returns:
            The script with ``expected`` filled in when a sidecar was found
        """
        filepath = Path(filepath)
        script = ScriptSerializer.parse_script(filepath.read_bytes())
        sidecar = Path(expected) if expected else ScriptSerializer.sidecar_path(filepath)
        if expected or sidecar.exists():
            script.expected = ScriptSerializer.parse_answers(sidecar.read_bytes())
        return script


def random_script(
    n: int,
    events: int,
    seed: int,
    max_weight: int = 1,
    query_rate: float = 0.25,
    path_rate: float = 0.25,
    source: int = 0,
) -> UpdateScript:
    """
    Random incremental script, deterministic for a given seed.

    Insertions pick uniform ordered pairs, so repeats exercise the relax and
    no-op paths. A share ``query_rate`` of events are queries, of which a share
    ``path_rate`` ask for paths.
    """
    if n < 2:
        return UpdateScript(n=n, source=source)
    rng = random.Random(seed)
    out: List[UpdateEvent] = []
    for _ in range(events):
        if rng.random() < query_rate:
            t = rng.randrange(n)
            out.append(PathQuery(t) if rng.random() < path_rate else DistQuery(t))
            continue
        u = rng.randrange(n)
        v = rng.randrange(n - 1)
        if v >= u:
            v += 1
        out.append(Insert(u, v, rng.randint(1, max_weight)))
    return UpdateScript(n=n, source=source, events=out)


def dense_script(
    n: int, seed: int, max_weight: int = 1, query_every: int = 0, source: int = 0
) -> UpdateScript:
    """
    Insert every ordered pair once in a seeded random order.

    Args:
        n: Vertex count; the final graph has ``n * (n - 1)`` edges
        seed: Shuffle seed
        max_weight: Weights are drawn uniformly from ``[1, max_weight]``
        query_every: Emit a distance query after every this many insertions
            (0 disables queries)
        source: Source vertex
    """
    rng = random.Random(seed)
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    rng.shuffle(pairs)
    out: List[UpdateEvent] = []
    for index, (u, v) in enumerate(pairs, start=1):
        out.append(Insert(u, v, rng.randint(1, max_weight)))
        if query_every and index % query_every == 0:
            out.append(DistQuery(rng.randrange(n)))
    return UpdateScript(n=n, source=source, events=out)
