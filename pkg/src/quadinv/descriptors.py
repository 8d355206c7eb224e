"""Recursive field descriptors and the extended-natural invariant values.

A descriptor names a field by how it is built from a base field:

    Base(b)                 the ground field k
    Cdvf(k)                 a complete discretely valued field with residue field k
    RationalFnField(K)      K(x)
    SemiGlobal(K, model)    a one-variable function field over the CDVF K,
                            described by the combinatorics of a regular model

Descriptors are immutable and hashable, so they can be memo keys.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, FrozenSet, List, Union

import gmpy2

from .errors import InvalidDescriptor, NotMsUsComputable

if TYPE_CHECKING:
    from .models import Model

INF = math.inf

# A nonnegative int, or INF.  Arithmetic with INF saturates for free.
InvariantValue = Union[int, float]

# Dimensions of anisotropic universal forms over a field.
AUSet = FrozenSet[int]


def format_value(v: InvariantValue) -> Union[int, str]:
    """JSON-friendly rendering: ints stay ints, infinity becomes ``"inf"``."""
    return "inf" if v == INF else int(v)


# ---------------------------------------------------------------------------
# Base classes
# ---------------------------------------------------------------------------

ALGCLOSED = "algclosed"
FINITE = "finite"
CUSTOM = "custom"


@dataclass(frozen=True)
class BaseClass:
    """The ground field k of a tower, up to the data the calculus needs.

    ``kind`` is one of ``algclosed``, ``finite`` or ``custom``.  For a custom
    base the caller declares ``r`` with m_s(k) = u_s(k) = 2**r and whether
    every one-variable function field L/k has m(L) = u(L) = 2*u_s(k).
    """

    kind: str
    p: int = 0
    r: int = 0
    fnfield_hypothesis: bool = True

    @classmethod
    def algclosed(cls) -> "BaseClass":
        return cls(ALGCLOSED)

    @classmethod
    def finite(cls, p: int) -> "BaseClass":
        return cls(FINITE, p=p, r=1)

    @classmethod
    def custom(cls, r: int, fnfield_hypothesis: bool) -> "BaseClass":
        return cls(CUSTOM, r=r, fnfield_hypothesis=fnfield_hypothesis)

    @property
    def exponent(self) -> int:
        if self.kind == ALGCLOSED:
            return 0
        if self.kind == FINITE:
            return 1
        return self.r

    @property
    def has_fnfield_hypothesis(self) -> bool:
        return self.kind != CUSTOM or self.fnfield_hypothesis

    def violations(self) -> List[str]:
        if self.kind == FINITE:
            if not (self.p >= 3 and gmpy2.is_prime(self.p)):
                return [f"{self.p} is not an odd prime"]
        elif self.kind == CUSTOM:
            if self.r < 0:
                return [f"custom exponent r={self.r} is negative"]
        elif self.kind != ALGCLOSED:
            return [f"unknown base kind {self.kind!r}"]
        return []


# ---------------------------------------------------------------------------
# Field descriptors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Base:
    base: BaseClass


@dataclass(frozen=True)
class Cdvf:
    residue: "FieldDescriptor"


@dataclass(frozen=True)
class RationalFnField:
    over: "FieldDescriptor"


@dataclass(frozen=True)
class SemiGlobal:
    over: "FieldDescriptor"
    model: "Model"


FieldDescriptor = Union[Base, Cdvf, RationalFnField, SemiGlobal]


def laurent(f: FieldDescriptor, times: int = 1) -> FieldDescriptor:
    """Wrap ``f`` in ``times`` Cdvf layers, i.e. f((t_1))...((t_times))."""
    for _ in range(times):
        f = Cdvf(f)
    return f


def is_ms_us_computable(f: FieldDescriptor) -> bool:
    if isinstance(f, Base):
        return True
    if isinstance(f, Cdvf):
        return is_ms_us_computable(f.residue)
    if isinstance(f, RationalFnField):
        return isinstance(f.over, Base) and f.over.base.kind == ALGCLOSED
    return False


@dataclass(frozen=True)
class Violation:
    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.path}: {self.message}"


def validate(f: FieldDescriptor) -> List[Violation]:
    """Every broken descriptor rule, each with a path into ``f``.

    An empty list means the descriptor is valid.
    """
    out: List[Violation] = []
    _validate(f, "$", out)
    return out


def _validate(f: FieldDescriptor, path: str, out: List[Violation]) -> None:
    if isinstance(f, Base):
        out.extend(Violation(path, m) for m in f.base.violations())
    elif isinstance(f, Cdvf):
        if not is_ms_us_computable(f.residue):
            out.append(Violation(path, "residue not ms-us-computable"))
        _validate(f.residue, path + ".residue", out)
    elif isinstance(f, RationalFnField):
        _validate(f.over, path + ".over", out)
    elif isinstance(f, SemiGlobal):
        if not isinstance(f.over, Cdvf):
            out.append(Violation(path, "over must be Cdvf-shaped"))
        _validate(f.over, path + ".over", out)
        # Imported late: models imports this module for the type names.
        from .models import model_violations

        for v in model_violations(f.model, f.over, path + ".model"):
            out.append(v)
    else:
        out.append(Violation(path, f"not a field descriptor: {type(f).__name__}"))


def require_valid(f: FieldDescriptor) -> None:
    problems = validate(f)
    if problems:
        raise InvalidDescriptor(problems)


def cdvf_depth(f: FieldDescriptor) -> int:
    """Number of complete discretely valued layers between ``f`` and its ground field."""
    if isinstance(f, Base):
        return 0
    if isinstance(f, Cdvf):
        return 1 + cdvf_depth(f.residue)
    if isinstance(f, RationalFnField):
        return cdvf_depth(f.over)
    if isinstance(f, SemiGlobal):
        return cdvf_depth(f.over)
    raise InvalidDescriptor([Violation("$", f"not a field descriptor: {type(f).__name__}")])


def ground(f: FieldDescriptor) -> FieldDescriptor:
    """Strip the Cdvf layers of a tower: K_n -> K_0."""
    while isinstance(f, Cdvf):
        f = f.residue
    return f


def ms_us(f: FieldDescriptor) -> int:
    """The common value m_s(f) = u_s(f), a power of two.

    Only defined for descriptors known to satisfy m_s = u_s: bases, their
    Cdvf towers, and k(x) over an algebraically closed k.  Each Cdvf layer
    doubles the value.
    """
    if isinstance(f, Base):
        return 2 ** f.base.exponent
    if isinstance(f, Cdvf):
        return 2 * ms_us(f.residue)
    if isinstance(f, RationalFnField) and is_ms_us_computable(f):
        return 2
    raise NotMsUsComputable(f"m_s = u_s is not known for {type(f).__name__} descriptors")


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def floor_pow2(n: InvariantValue) -> InvariantValue:
    """Largest 2**k <= n (INF maps to INF)."""
    if n == INF:
        return INF
    return 1 << (int(n).bit_length() - 1)

