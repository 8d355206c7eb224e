"""Rooted component trees, the layer of a semi-global field, and generators.

Over an n-local field every component of a regular model is itself a
semi-global field one level down, so a model unfolds into a rooted tree whose
vertices are black when their reduction graph has a cycle.  The layer is the
smallest level holding a black vertex (infinite when there is none, in which
case the field is called fully arboreal).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, List, Tuple

from .calculus import require_base_hypothesis, require_fnfield_hypothesis, sumset
from .descriptors import (
    INF,
    AUSet,
    Base,
    BaseClass,
    Cdvf,
    FieldDescriptor,
    InvariantValue,
    RationalFnField,
    SemiGlobal,
    cdvf_depth,
    ground,
    laurent,
    require_valid,
)
from .errors import InvalidDescriptor
from .models import (
    LEAF,
    RATLEAF,
    ComponentField,
    Model,
    Nested,
    ReductionGraph,
    two_components_two_points,
)

BLACK = "black"
WHITE = "white"


@dataclass(frozen=True)
class TreeVertex:
    color: str
    level: int
    children: Tuple["TreeVertex", ...] = ()

    def walk(self) -> Iterator["TreeVertex"]:
        yield self
        for c in self.children:
            yield from c.walk()


@dataclass(frozen=True)
class RootedComponentTree:
    root: TreeVertex

    def vertices(self) -> List[TreeVertex]:
        return list(self.root.walk())

    def __len__(self) -> int:
        return len(self.vertices())


def as_semiglobal(f: FieldDescriptor) -> SemiGlobal:
    """View ``f`` as a semi-global field with an explicit model.

    K(x) over a CDVF K has the projective line as a smooth model: one
    rational component, trivial reduction graph.
    """
    if isinstance(f, SemiGlobal):
        return f
    if isinstance(f, RationalFnField) and isinstance(f.over, Cdvf):
        return SemiGlobal(f.over, Model((RATLEAF,), graph=ReductionGraph(1, (), "c")))
    raise InvalidDescriptor([f"{type(f).__name__} is not a function field over a CDVF"])


def build_component_tree(f: FieldDescriptor) -> RootedComponentTree:
    f = as_semiglobal(f)
    require_valid(f)
    return RootedComponentTree(_tree_of_model(f.model, 1))


def _tree_of_model(model: Model, level: int) -> TreeVertex:
    children = []
    for comp in model.components:
        if isinstance(comp, Nested):
            children.append(_tree_of_model(comp.model, level + 1))
        else:
            children.append(TreeVertex(WHITE, level + 1))
    return TreeVertex(WHITE if model.is_tree else BLACK, level, tuple(children))


def layer(t: RootedComponentTree) -> InvariantValue:
    levels = [v.level for v in t.root.walk() if v.color == BLACK]
    return min(levels) if levels else INF


def field_layer(f: FieldDescriptor) -> InvariantValue:
    return layer(build_component_tree(f))


def m_from_layer(f: FieldDescriptor) -> InvariantValue:
    """m(F) from the layer alone: 2**layer, or 2**(n+1) u_s(k) when fully arboreal."""
    f = as_semiglobal(f)
    require_valid(f)
    base = require_fnfield_hypothesis(ground(f.over))
    n = cdvf_depth(f.over)
    j = field_layer(f)
    if j == INF:
        return 2 ** (n + 1) * 2**base.exponent
    return 2**j


def _canonical(sets) -> Tuple[AUSet, ...]:
    return tuple(sorted(set(sets), key=lambda s: (tuple(sorted(s)), len(s))))


def attainable_au(n: int, base: BaseClass) -> Tuple[AUSet, ...]:
    """Every AU set a semi-global field over an n-local field over ``base`` can have.

    Each level's candidates come from combining any nonempty family of
    component AU sets one level down, with or without a cycle in the
    reduction graph.  The result is sorted canonically.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    require_base_hypothesis(base)
    top = 2 ** (base.exponent + 2)
    level: Tuple[AUSet, ...] = _canonical([frozenset({top}), frozenset({2, top})])
    for _ in range(n - 1):
        unions: set = set()
        for b in level:
            s = sumset(b)
            unions |= {u | s for u in unions}
            unions.add(s)
        level = _canonical(list(unions) + [u | {2} for u in unions])
    return level


def _wrap_single(model: Model) -> Model:
    return Model((Nested(model),), graph=ReductionGraph(1, (), "c"))


def make_layer_example(n: int, j: int, base: BaseClass) -> SemiGlobal:
    """A semi-global field over an n-local field over ``base`` with layer ``j``.

    The innermost model has two rational components meeting at two points;
    it is wrapped in j - 1 smooth single-component models.
    """
    if not 1 <= j <= n:
        raise ValueError(f"layer j={j} must lie in 1..{n}")
    model = Model((RATLEAF, RATLEAF), graph=two_components_two_points())
    for _ in range(j - 1):
        model = _wrap_single(model)
    return SemiGlobal(laurent(Base(base), n), model)


def make_fully_arboreal_example(n: int, base: BaseClass) -> SemiGlobal:
    """A chain of smooth single-component models ending in a rational component."""
    model = Model((RATLEAF,), graph=ReductionGraph(1, (), "c"))
    for _ in range(n - 1):
        model = _wrap_single(model)
    return SemiGlobal(laurent(Base(base), n), model)


def random_graph(components: int, tree: bool, rng: random.Random) -> ReductionGraph:
    """A random connected bipartite reduction graph on ``components`` component vertices."""
    kinds = ["c"] * components
    edges = []
    for i in range(1, components):
        pt = len(kinds)
        kinds.append("p")
        edges += [(rng.randrange(i), pt), (i, pt)]
    if not tree:
        for _ in range(rng.randint(1, 2)):
            pt = len(kinds)
            kinds.append("p")
            edges += [(rng.randrange(components), pt), (rng.randrange(components), pt)]
    return ReductionGraph(len(kinds), tuple(edges), "".join(kinds))


def random_model(
    depth: int,
    rng: random.Random,
    max_components: int = 3,
    leaf_kinds: Tuple[ComponentField, ...] = (LEAF, RATLEAF),
) -> Model:
    """A random model over a ``depth``-local field (Nested only when depth >= 2)."""
    s = rng.randint(1, max_components)
    comps = []
    for _ in range(s):
        if depth >= 2 and rng.random() < 0.5:
            comps.append(Nested(random_model(depth - 1, rng, max_components, leaf_kinds)))
        else:
            comps.append(rng.choice(leaf_kinds))
    tree = rng.random() < 0.6
    if rng.random() < 0.5:
        return Model(tuple(comps), graph=random_graph(s, tree, rng))
    return Model(tuple(comps), tree_flag=tree)


def random_semiglobal(
    n: int, base: BaseClass, rng: random.Random, max_components: int = 3
) -> SemiGlobal:
    return SemiGlobal(laurent(Base(base), n), random_model(n, rng, max_components))
