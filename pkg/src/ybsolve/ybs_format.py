"""
The "ybs 1" solution file format.

    ybs 1
    n 3
    labels x1 x2 x3          # optional, defaults to x1..xN
    L 1: 1 2 3               # images of ℒ_{x_1}, 1-based
    L 2: 1 2 3
    L 3: 2 1 3
    R 1: ...                 # optional; R i lists x_k^{x_i} for k = 1..N

Without R rows the right action is derived as ℛ_x = ℒ_x⁻¹ (lri), which needs
every L row to be a bijection. '#' starts a comment; blank lines are ignored.
"""

import re
import sys
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from ybsolve.exceptions import QuadraticSetError, YbsParseError
from ybsolve.qset import QuadraticSet, from_left_action

HEADER = "ybs 1"
TOKEN_RE = re.compile(r"\S+")
DIGITS_RE = re.compile(r"[0-9]+")

Token = Tuple[str, int]


def _tokens(line: str) -> List[Token]:
    """Whitespace-separated tokens with their 1-based columns, comments removed."""
    body = line.split("#", 1)[0]
    return [(m.group(0), m.start() + 1) for m in TOKEN_RE.finditer(body)]


def _int(token: Token, line_no: int, what: str) -> int:
    text, column = token
    if not DIGITS_RE.fullmatch(text):
        raise YbsParseError(f"{what} must be a positive integer, got {text!r}", line_no, column)
    return int(text)


class _Parser:
    def __init__(self):
        self.n: Optional[int] = None
        self.labels: Optional[List[str]] = None
        self.rows: Dict[str, Dict[int, List[int]]] = {"L": {}, "R": {}}
        self.row_lines: Dict[Tuple[str, int], int] = {}
        self.seen_header = False
        self.last_line = 0

    def feed(self, line_no: int, tokens: List[Token]) -> None:
        self.last_line = line_no
        keyword, column = tokens[0]
        if not self.seen_header:
            if [t for t, _ in tokens] != HEADER.split():
                raise YbsParseError(f"expected header {HEADER!r}", line_no, column)
            self.seen_header = True
            return
        if keyword == "ybs":
            raise YbsParseError("unexpected second header", line_no, column)
        if keyword == "n":
            if self.n is not None:
                raise YbsParseError("size given twice", line_no, column)
            if len(tokens) != 2:
                raise YbsParseError("expected 'n <N>'", line_no, column)
            self.n = _int(tokens[1], line_no, "size")
            if self.n < 1:
                raise YbsParseError("size must be at least 1", line_no, tokens[1][1])
            return
        if self.n is None:
            raise YbsParseError("expected 'n <N>' before any other line", line_no, column)
        if keyword == "labels":
            self._labels(line_no, tokens)
            return
        if keyword.rstrip(":") in ("L", "R"):
            self._row(line_no, tokens)
            return
        raise YbsParseError(f"unknown keyword {keyword!r}", line_no, column)

    def _labels(self, line_no: int, tokens: List[Token]) -> None:
        if self.labels is not None:
            raise YbsParseError("labels given twice", line_no, tokens[0][1])
        names = [t for t, _ in tokens[1:]]
        if len(names) != self.n:
            raise YbsParseError(f"expected {self.n} labels, got {len(names)}", line_no, tokens[0][1])
        seen = set()
        for text, column in tokens[1:]:
            if text in seen:
                raise YbsParseError(f"duplicate label {text!r}", line_no, column)
            seen.add(text)
        self.labels = names

    def _row(self, line_no: int, tokens: List[Token]) -> None:
        # accept "L 3:" as well as "L 3 :"
        kind = tokens[0][0].rstrip(":")
        if len(tokens) < 2:
            raise YbsParseError(f"expected '{kind} <i>: <images>'", line_no, tokens[0][1])
        index_text, index_column = tokens[1]
        rest = tokens[2:]
        if index_text.endswith(":"):
            index_text = index_text[:-1]
        elif rest and rest[0][0] == ":":
            rest = rest[1:]
        else:
            raise YbsParseError("expected ':' after the row index", line_no, index_column)
        i = _int((index_text, index_column), line_no, "row index")
        if not 1 <= i <= self.n:
            raise YbsParseError(f"row index {i} outside 1..{self.n}", line_no, index_column)
        if i in self.rows[kind]:
            raise YbsParseError(f"{kind} row {i} given twice", line_no, tokens[0][1])
        if len(rest) != self.n:
            raise YbsParseError(f"{kind} row {i} has {len(rest)} entries, expected {self.n}", line_no, index_column)
        values = []
        for token in rest:
            value = _int(token, line_no, "entry")
            if not 1 <= value <= self.n:
                raise YbsParseError(f"entry {value} outside 1..{self.n}", line_no, token[1])
            values.append(value - 1)
        self.rows[kind][i] = values
        self.row_lines[(kind, i)] = line_no

    def finish(self) -> QuadraticSet:
        if not self.seen_header:
            raise YbsParseError(f"expected header {HEADER!r}", max(self.last_line, 1))
        if self.n is None:
            raise YbsParseError("missing 'n <N>' line", self.last_line)
        n = self.n
        left_rows, right_rows = self.rows["L"], self.rows["R"]
        if len(left_rows) != n:
            missing = min(set(range(1, n + 1)) - set(left_rows))
            raise YbsParseError(f"expected {n} L rows, got {len(left_rows)} (L {missing} missing)", self.last_line)
        if right_rows and len(right_rows) != n:
            missing = min(set(range(1, n + 1)) - set(right_rows))
            raise YbsParseError(f"expected {n} R rows, got {len(right_rows)} (R {missing} missing)", self.last_line)

        left = [left_rows[i] for i in range(1, n + 1)]
        if not right_rows:
            for i, row in enumerate(left, start=1):
                if sorted(row) != list(range(n)):
                    raise YbsParseError(f"L row {i} is not a bijection", self.row_lines[("L", i)])
        try:
            if not right_rows:
                return from_left_action(left, self.labels)
            # R i holds the column x_·^{x_i}
            right = np.array([right_rows[i] for i in range(1, n + 1)], dtype=np.intp).T
            return QuadraticSet(np.array(left, dtype=np.intp), right, tuple(self.labels or ()))
        except QuadraticSetError as exc:
            raise YbsParseError(str(exc), self.last_line) from exc


def parse_ybs(text: str) -> QuadraticSet:
    """Parse one ybs document."""
    parser = _Parser()
    for line_no, line in enumerate(text.splitlines(), start=1):
        tokens = _tokens(line)
        if tokens:
            parser.feed(line_no, tokens)
    return parser.finish()


def iter_ybs_documents(text: str) -> Iterator[QuadraticSet]:
    """Parse consecutive ybs documents, each starting at its own header line."""
    parser: Optional[_Parser] = None
    for line_no, line in enumerate(text.splitlines(), start=1):
        tokens = _tokens(line)
        if not tokens:
            continue
        if tokens[0][0] == "ybs":
            if parser is not None:
                yield parser.finish()
            parser = _Parser()
        if parser is None:
            raise YbsParseError(f"expected header {HEADER!r}", line_no, tokens[0][1])
        parser.feed(line_no, tokens)
    if parser is not None:
        yield parser.finish()


def write_ybs(Q: QuadraticSet) -> str:
    """Serialise Q; R rows are written only when the right action is not lri-derived."""
    lines = [HEADER, f"n {Q.n}"]
    if not Q.has_default_labels():
        lines.append("labels " + " ".join(Q.labels))
    for i in range(Q.n):
        lines.append(f"L {i + 1}: " + " ".join(str(int(v) + 1) for v in Q.left[i]))
    if not Q.lri_derived:
        for i in range(Q.n):
            lines.append(f"R {i + 1}: " + " ".join(str(int(v) + 1) for v in Q.right[:, i]))
    return "\n".join(lines) + "\n"


def read_ybs(path: str) -> QuadraticSet:
    """Load a ybs file; '-' reads standard input."""
    if path == "-":
        return parse_ybs(sys.stdin.read())
    with open(path, "r", encoding="utf-8") as handle:
        return parse_ybs(handle.read())
