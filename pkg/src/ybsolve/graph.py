"""
The action graph Γ(X, r): an arrow x → ᵃx labelled a for every actor a.
"""

from typing import List

import networkx as nx

from ybsolve.exceptions import LriError
from ybsolve.qset import QuadraticSet, classify


def _require_lri(Q: QuadraticSet) -> None:
    if not classify(Q).lri:
        raise LriError("the action graph is defined for sets with the lri property")


def _quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def action_graph(Q: QuadraticSet, include_loops: bool = False) -> nx.MultiDiGraph:
    _require_lri(Q)
    graph = nx.MultiDiGraph()
    graph.add_nodes_from(range(Q.n))
    for a in range(Q.n):
        for x in range(Q.n):
            target = int(Q.left[a, x])
            if include_loops or target != x:
                graph.add_edge(x, target, actor=a)
    return graph


def export_dot(Q: QuadraticSet, include_loops: bool = False) -> str:
    """DOT text with nodes in index order and edges ordered by (actor, source)."""
    graph = action_graph(Q, include_loops)
    lines = ["digraph YB {"]
    for x in range(Q.n):
        lines.append(f"  {_quote(Q.labels[x])};")
    edges = sorted(graph.edges(data="actor"), key=lambda e: (e[2], e[0]))
    for source, target, actor in edges:
        lines.append(f"  {_quote(Q.labels[source])} -> {_quote(Q.labels[target])} [label={_quote(Q.labels[actor])}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_components(Q: QuadraticSet) -> List[List[int]]:
    """Weakly connected components of the loopless graph, ordered by least element."""
    graph = action_graph(Q)
    return sorted((sorted(c) for c in nx.weakly_connected_components(graph)), key=lambda c: c[0])
