"""m, u and AU for field descriptors, computed by recursion on the descriptor.

The rules:

* a base with m_s = u_s = 2**r has AU = {2**r};
* a complete discretely valued field has AU = AU(k) + AU(k) (sumset over its
  residue field k);
* K(x) with m_s(K) = u_s(K) has AU = {2 m_s(K)};
* a semi-global field has AU equal to the union, over the components of a
  regular model, of the sumsets of the component AU sets, together with 2
  exactly when the reduction graph is not a tree.
"""

from __future__ import annotations

from functools import lru_cache
from typing import FrozenSet, Iterable

from .descriptors import (
    AUSet,
    Base,
    BaseClass,
    Cdvf,
    FieldDescriptor,
    InvariantValue,
    RationalFnField,
    SemiGlobal,
    ground,
    ms_us,
    require_valid,
)
from .errors import HypothesisRequired, InvalidDescriptor
from .models import Leaf, Nested, RationalLeaf


def sumset(a: Iterable[int], b: Iterable[int] = None) -> FrozenSet[int]:
    a = frozenset(a)
    b = a if b is None else frozenset(b)
    return frozenset(x + y for x in a for y in b)


def require_fnfield_hypothesis(k: FieldDescriptor) -> BaseClass:
    """The ground field ``k`` must be a base declared to satisfy
    m(L) = u(L) = 2 u_s(k) for one-variable function fields L/k."""
    if isinstance(k, Base) and k.base.has_fnfield_hypothesis:
        return k.base
    if isinstance(k, Base):
        raise HypothesisRequired("custom base declared without the function-field hypothesis")
    raise HypothesisRequired(
        f"the function-field hypothesis is not established over a {type(k).__name__} ground field"
    )


def require_base_hypothesis(base: BaseClass) -> None:
    if not base.has_fnfield_hypothesis:
        raise HypothesisRequired("custom base declared without the function-field hypothesis")


def au_set(f: FieldDescriptor) -> AUSet:
    require_valid(f)
    return _au(f)


@lru_cache(maxsize=4096)
def _au(f: FieldDescriptor) -> AUSet:
    if isinstance(f, Base):
        return frozenset({ms_us(f)})
    if isinstance(f, Cdvf):
        return sumset(_au(f.residue))
    if isinstance(f, RationalFnField):
        return frozenset({2 * ms_us(f.over)})
    if isinstance(f, SemiGlobal):
        residue = f.over.residue
        out = set()
        for comp in f.model.components:
            out |= sumset(_component_au(comp, residue))
        if not f.model.is_tree:
            out.add(2)
        return frozenset(out)
    raise InvalidDescriptor([f"not a field descriptor: {type(f).__name__}"])


def _component_au(comp, residue: FieldDescriptor) -> AUSet:
    if isinstance(comp, Nested):
        return _au(SemiGlobal(residue, comp.model))
    if isinstance(comp, Leaf):
        require_fnfield_hypothesis(ground(residue))
    elif not isinstance(comp, RationalLeaf):
        raise InvalidDescriptor([f"not a component: {type(comp).__name__}"])
    return frozenset({2 * ms_us(residue)})


def m_invariant(f: FieldDescriptor) -> InvariantValue:
    return min(au_set(f))


def u_invariant(f: FieldDescriptor) -> InvariantValue:
    return max(au_set(f))


def possible_m(n: int, base: BaseClass) -> FrozenSet[int]:
    """Every m-invariant a semi-global field over an n-local field over
    ``base`` can have.  ``n = 0`` gives just the base's own value."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    require_base_hypothesis(base)
    r = base.exponent
    if n == 0:
        return frozenset({2**r})
    return frozenset({2**j for j in range(1, n + 1)} | {2 ** (n + r + 1)})
