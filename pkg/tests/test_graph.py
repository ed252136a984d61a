import numpy as np
import pytest

from ybsolve.exceptions import LriError
from ybsolve.graph import action_graph, export_dot, graph_components
from ybsolve.qset import QuadraticSet


def test_dot_export_of_three_element_solution(three):
    assert export_dot(three) == (
        "digraph YB {\n"
        '  "x1";\n'
        '  "x2";\n'
        '  "x3";\n'
        '  "x1" -> "x2" [label="x3"];\n'
        '  "x2" -> "x1" [label="x3"];\n'
        "}\n"
    )


def test_loops_are_optional(three):
    assert action_graph(three).number_of_edges() == 2
    assert action_graph(three, include_loops=True).number_of_edges() == 9


def test_labels_are_quoted():
    Q = QuadraticSet(np.array([[0, 1], [0, 1]]), np.array([[0, 0], [1, 1]]), ('a"', "b"))
    assert '"a\\""' in export_dot(Q)


def test_components(three, gap):
    assert graph_components(three) == [[0, 1], [2]]
    assert graph_components(gap) == [list(range(8)), [8, 10], [9, 11]]


def test_graph_needs_lri():
    Q = QuadraticSet(np.zeros((2, 2), dtype=int), np.zeros((2, 2), dtype=int))
    with pytest.raises(LriError):
        export_dot(Q)
