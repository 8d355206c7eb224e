"""Regular-model data for semi-global fields.

A ``Model`` records what the invariant calculus needs from a regular model
of a semi-global field: whether its reduction graph is a tree, and one entry
per irreducible component of the closed fiber saying what that component's
function field looks like.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

import networkx as nx

from .descriptors import Cdvf, FieldDescriptor, Violation
from .errors import GraphError

COMPONENT_VERTEX = "c"
POINT_VERTEX = "p"


@dataclass(frozen=True)
class ReductionGraph:
    """A connected multigraph, optionally bipartitioned into component
    vertices (``"c"``) and point vertices (``"p"``)."""

    vertex_count: int
    edges: Tuple[Tuple[int, int], ...] = ()
    kinds: Optional[str] = None

    def to_networkx(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(range(self.vertex_count))
        g.add_edges_from(self.edges)
        return g

    @property
    def betti1(self) -> int:
        return len(self.edges) - self.vertex_count + 1

    def is_connected(self) -> bool:
        return self.vertex_count >= 1 and nx.is_connected(self.to_networkx())

    def violations(self) -> List[str]:
        out = []
        if self.vertex_count < 1:
            return ["graph needs at least one vertex"]
        for a, b in self.edges:
            if not (0 <= a < self.vertex_count and 0 <= b < self.vertex_count):
                out.append(f"edge ({a},{b}) has an endpoint outside 0..{self.vertex_count - 1}")
        if out:
            return out
        if not self.is_connected():
            out.append("graph is not connected")
        if self.kinds is not None:
            if len(self.kinds) != self.vertex_count or set(self.kinds) - {COMPONENT_VERTEX, POINT_VERTEX}:
                out.append(f"kinds must be {self.vertex_count} letters from 'c'/'p'")
            else:
                for a, b in self.edges:
                    if self.kinds[a] == self.kinds[b]:
                        out.append(f"edge ({a},{b}) joins two vertices of the same kind")
        return out


def betti1(g: ReductionGraph) -> int:
    return g.betti1


def is_tree(g: ReductionGraph) -> bool:
    if not g.is_connected():
        raise GraphError("reduction graph is not connected")
    return len(g.edges) == g.vertex_count - 1


@dataclass(frozen=True)
class Leaf:
    """A component with an arbitrary function field, whose own model is
    not described further (its rooted-tree vertex is white)."""


@dataclass(frozen=True)
class RationalLeaf:
    """A component isomorphic to the projective line over the residue field."""


@dataclass(frozen=True)
class Nested:
    """A component whose function field is itself semi-global over the
    residue field, with the given model."""

    model: "Model"


LEAF = Leaf()
RATLEAF = RationalLeaf()

ComponentField = Union[Leaf, RationalLeaf, Nested]


@dataclass(frozen=True)
class Model:
    """Closed-fiber data: tree-ness (explicit graph and/or flag) plus components."""

    components: Tuple[ComponentField, ...]
    graph: Optional[ReductionGraph] = None
    tree_flag: Optional[bool] = None

    @property
    def is_tree(self) -> bool:
        if self.graph is not None:
            return is_tree(self.graph)
        if self.tree_flag is None:
            raise GraphError("model has neither a graph nor a tree flag")
        return self.tree_flag


def tree_model(*components: ComponentField) -> Model:
    return Model(tuple(components), tree_flag=True)


def loop_model(*components: ComponentField) -> Model:
    return Model(tuple(components), tree_flag=False)


def two_components_two_points() -> ReductionGraph:
    """Two components meeting at two points: the smallest non-tree closed fiber."""
    return ReductionGraph(4, ((0, 2), (0, 3), (1, 2), (1, 3)), "ccpp")


def model_violations(model: Model, over: FieldDescriptor, path: str) -> List[Violation]:
    out: List[Violation] = []
    if not model.components:
        out.append(Violation(path, "model needs at least one component"))
    if model.graph is None and model.tree_flag is None:
        out.append(Violation(path, "model needs a graph or a tree flag"))
    if model.graph is not None:
        gv = model.graph.violations()
        out.extend(Violation(path + ".graph", m) for m in gv)
        if not gv:
            if model.tree_flag is not None and model.tree_flag != is_tree(model.graph):
                out.append(Violation(path, "tree flag disagrees with the graph"))
            kinds = model.graph.kinds
            if kinds is not None and kinds.count(COMPONENT_VERTEX) != len(model.components):
                out.append(
                    Violation(path, "number of component vertices differs from the component list")
                )
    for i, comp in enumerate(model.components):
        cpath = f"{path}.components[{i}]"
        if isinstance(comp, Nested):
            residue = over.residue if isinstance(over, Cdvf) else None
            if not isinstance(residue, Cdvf):
                out.append(Violation(cpath, "nested component needs a Cdvf residue field"))
            else:
                out.extend(model_violations(comp.model, residue, cpath + ".model"))
        elif not isinstance(comp, (Leaf, RationalLeaf)):
            out.append(Violation(cpath, f"not a component: {type(comp).__name__}"))
    return out


def canonical_graph(model: Model) -> ReductionGraph:
    """The explicit graph of ``model``, or a small graph realising its tree flag.

    The synthesized graph chains the components through intersection points;
    a non-tree model gets one extra point joining the first two components
    (or meeting a lone component twice).
    """
    if model.graph is not None:
        return model.graph
    s = len(model.components)
    kinds = [COMPONENT_VERTEX] * s
    edges = []
    for i in range(s - 1):
        pt = len(kinds)
        kinds.append(POINT_VERTEX)
        edges += [(i, pt), (i + 1, pt)]
    if not model.is_tree:
        pt = len(kinds)
        kinds.append(POINT_VERTEX)
        edges += [(0, pt), (min(1, s - 1), pt)]
    return ReductionGraph(len(kinds), tuple(edges), "".join(kinds))


def to_dot(g: ReductionGraph, name: str = "reduction") -> str:
    lines = [f"graph {name} {{"]
    if g.kinds is not None:
        for v, k in enumerate(g.kinds):
            shape = "box" if k == COMPONENT_VERTEX else "point"
            lines.append(f"  {v} [shape={shape}];")
    for a, b in g.edges:
        lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
