import numpy as np
import pytest

from ybsolve.construct import trivial_solution
from ybsolve.exceptions import YbsParseError
from ybsolve.qset import QuadraticSet
from ybsolve.ybs_format import iter_ybs_documents, parse_ybs, read_ybs, write_ybs

THREE = """\
ybs 1
n 3
L 1: 1 2 3
L 2: 1 2 3
L 3: 2 1 3
"""


def test_parse_three_element_solution(three):
    Q = parse_ybs(THREE)
    assert Q == three
    assert Q.lri_derived
    assert Q.has_default_labels()


def test_write_is_stable(three):
    assert write_ybs(three) == THREE
    assert write_ybs(parse_ybs(write_ybs(three))) == THREE


def test_labels_written_only_when_custom(gap):
    text = write_ybs(gap)
    assert "labels x1 x2 x3 x4 x5 x6 x7 x8 a b c d" in text
    assert "labels" not in write_ybs(trivial_solution(2))


def test_comments_blank_lines_and_spaced_colon():
    text = "# a comment\n\nybs 1   # header\nn 2\nL 1 : 1 2\n\nL 2: 1 2\n"
    Q = parse_ybs(text)
    assert Q == trivial_solution(2)


def test_explicit_right_rows_round_trip():
    n = 2
    flip = QuadraticSet(np.tile(np.arange(n), (n, 1)), np.tile(np.arange(n)[:, None], (1, n)))
    text = write_ybs(flip)
    assert "R 1: 1 2" in text
    parsed = parse_ybs(text)
    assert not parsed.lri_derived
    assert np.array_equal(parsed.right, flip.right)


def test_right_rows_allow_degenerate_left_rows():
    text = "ybs 1\nn 2\nL 1: 1 1\nL 2: 1 1\nR 1: 1 1\nR 2: 1 1\n"
    Q = parse_ybs(text)
    assert Q.left.tolist() == [[0, 0], [0, 0]]


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("ybs 2\nn 1\nL 1: 1\n", 1, "expected header"),
        ("n 1\n", 1, "expected header"),
        ("ybs 1\nL 1: 1\n", 2, "before any other line"),
        ("ybs 1\nn 1\nn 1\n", 3, "size given twice"),
        ("ybs 1\nn 2\nfoo 1\n", 3, "unknown keyword"),
        ("ybs 1\nn 2\nL 3: 1 2\n", 3, "outside 1..2"),
        ("ybs 1\nn 2\nL 1: 1 2\nL 1: 1 2\n", 4, "given twice"),
        ("ybs 1\nn 2\nL 1: 1\n", 3, "has 1 entries"),
        ("ybs 1\nn 2\nL 1: 1 3\n", 3, "entry 3 outside"),
        ("ybs 1\nn 2\nL 1: 1 x\n", 3, "positive integer"),
        ("ybs 1\nn 2\nL 1 1 2\n", 3, "expected ':'"),
        ("ybs 1\nn 2\nL 1: 1 2\n", 3, "L 2 missing"),
        ("ybs 1\nn 2\nL 1: 1 1\nL 2: 1 2\n", 3, "L row 1 is not a bijection"),
        ("ybs 1\nn 2\nlabels a a\n", 3, "duplicate label"),
        ("ybs 1\nn 2\nlabels a\n", 3, "expected 2 labels"),
        ("ybs 1\nn 1\nL 1: 1\nybs 1\n", 4, "second header"),
    ],
)
def test_parse_errors(text, line, fragment):
    with pytest.raises(YbsParseError) as info:
        parse_ybs(text)
    assert info.value.line == line
    assert fragment in str(info.value)


def test_parse_error_column():
    with pytest.raises(YbsParseError) as info:
        parse_ybs("ybs 1\nn 2\nL 1: 1 9\n")
    assert info.value.column == 8


def test_multiple_documents(three):
    text = write_ybs(three) + "\n" + write_ybs(trivial_solution(2))
    found = list(iter_ybs_documents(text))
    assert found == [three, trivial_solution(2)]


def test_read_from_file_and_stdin(tmp_path, monkeypatch, three):
    import io

    path = tmp_path / "three.ybs"
    path.write_text(THREE)
    assert read_ybs(str(path)) == three
    monkeypatch.setattr("sys.stdin", io.StringIO(THREE))
    assert read_ybs("-") == three


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("ybs 1\nn ²\n", 2, 3),
        ("ybs 1\nn 2\nL 1: 1 ٢\n", 3, 8),
        ("ybs 1\nn 2\nL ¹: 1 2\n", 3, 3),
    ],
)
def test_non_ascii_digits_are_parse_errors(text, line, column):
    with pytest.raises(YbsParseError) as info:
        parse_ybs(text)
    assert info.value.line == line
    assert info.value.column == column
    assert "positive integer" in str(info.value)
