"""Diagonal quadratic forms over F_p((t_1))...((t_r)) at square-class resolution.

The square-class group of the tower has 2**(r+1) elements.  A class is a bit
vector: ``eps`` says whether the unit part's residue in F_p is a non-square,
``exps[i]`` is the parity of the t_{i+1}-adic valuation.  Internally a class
is packed into an int code: bit 0 is ``eps``, bit i is ``exps[i-1]``.

Isotropy is decided by Springer's theorem, peeling off the outermost
uniformizer: q = q1 + t_r q2 with unit entries is isotropic iff one of the
residue forms is.  Over F_p every form of dimension >= 3 is isotropic and
<a, b> is isotropic iff -ab is a square.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import gmpy2

from .errors import CapExceeded, FormError
from .laurent import LaurentElement

DEFAULT_MAX_R = 2


@dataclass(frozen=True)
class Tower:
    """F_p((t_1))...((t_r)); t_r is the outermost uniformizer."""

    p: int
    r: int

    def __post_init__(self):
        if not (self.p >= 3 and gmpy2.is_prime(self.p)):
            raise FormError(f"{self.p} is not an odd prime")
        if self.r < 0:
            raise FormError("r must be nonnegative")

    @property
    def class_count(self) -> int:
        return 2 ** (self.r + 1)

    @property
    def nonresidue(self) -> int:
        return least_nonresidue(self.p)

    @property
    def minus_one(self) -> "SquareClass":
        return SquareClass(1 if self.p % 4 == 3 else 0, (0,) * self.r)

    def classes(self) -> List["SquareClass"]:
        return [SquareClass.from_code(c, self.r) for c in range(self.class_count)]

    def trivial(self) -> "SquareClass":
        return SquareClass(0, (0,) * self.r)

    def residue_tower(self) -> "Tower":
        return Tower(self.p, self.r - 1)


@lru_cache(maxsize=None)
def least_nonresidue(p: int) -> int:
    return next(a for a in range(2, p) if gmpy2.legendre(a, p) == -1)


@dataclass(frozen=True)
class SquareClass:
    eps: int
    exps: Tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.exps)

    @property
    def code(self) -> int:
        c = self.eps & 1
        for i, b in enumerate(self.exps):
            c |= (b & 1) << (i + 1)
        return c

    @classmethod
    def from_code(cls, code: int, r: int) -> "SquareClass":
        return cls(code & 1, tuple((code >> (i + 1)) & 1 for i in range(r)))

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        if self.r != other.r:
            raise ValueError("classes live in different towers")
        return SquareClass.from_code(self.code ^ other.code, self.r)

    def is_trivial(self) -> bool:
        return self.code == 0

    def __str__(self) -> str:
        tokens = ["s"] if self.eps else []
        tokens += [f"t{i + 1}" for i, b in enumerate(self.exps) if b]
        return "*".join(tokens) or "1"


@dataclass(frozen=True)
class ClassForm:
    entries: Tuple[SquareClass, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))

    @classmethod
    def from_codes(cls, codes: Iterable[int], r: int) -> "ClassForm":
        return cls(tuple(SquareClass.from_code(c, r) for c in codes))

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def codes(self) -> Tuple[int, ...]:
        return tuple(e.code for e in self.entries)

    def scaled(self, a: SquareClass) -> "ClassForm":
        return ClassForm(tuple(a * e for e in self.entries))

    def __add__(self, other: "ClassForm") -> "ClassForm":
        return ClassForm(self.entries + other.entries)

    def __str__(self) -> str:
        return "[" + ", ".join(str(e) for e in self.entries) + "]"


def form(T: Tower, codes: Iterable[int]) -> ClassForm:
    return ClassForm.from_codes(codes, T.r)


# ---------------------------------------------------------------------------
# Elements -> classes
# ---------------------------------------------------------------------------


def class_of_element(T: Tower, e: LaurentElement) -> SquareClass:
    if e.p != T.p or e.r != T.r:
        raise FormError("element does not belong to this tower")
    if e.is_zero():
        raise FormError("zero has no square class")
    if T.r == 0:
        return SquareClass(1 if gmpy2.legendre(e.constant_value(), T.p) == -1 else 0, ())
    inner = class_of_element(T.residue_tower(), e.leading_coefficient())
    return SquareClass(inner.eps, inner.exps + (int(e.valuation()) % 2,))


def representative(T: Tower, a: SquareClass) -> LaurentElement:
    """Canonical element of a class: 1 or the least non-residue, times a square-free monomial."""
    c = T.nonresidue if a.eps else 1
    return LaurentElement.monomial(T.p, T.r, a.exps, c)


# ---------------------------------------------------------------------------
# Decisions
# ---------------------------------------------------------------------------


def _minus_one_code(p: int) -> int:
    return 1 if p % 4 == 3 else 0


@lru_cache(maxsize=1 << 18)
def _isotropic(codes: Tuple[int, ...], r: int, m1: int) -> Tuple[bool, int]:
    """(isotropic?, Springer levels descended).  ``codes`` is sorted."""
    if r == 0:
        n = len(codes)
        if n >= 3:
            return True, 0
        if n == 2:
            return (codes[0] ^ codes[1] ^ m1) == 0, 0
        return False, 0
    bit = 1 << r
    unit_part = tuple(c for c in codes if not c & bit)
    pi_part = tuple(c ^ bit for c in codes if c & bit)
    iso1, d1 = _isotropic(unit_part, r - 1, m1)
    if iso1:
        return True, d1 + 1
    iso2, d2 = _isotropic(pi_part, r - 1, m1)
    return iso2, max(d1, d2) + 1


def _check(T: Tower, q: ClassForm) -> Tuple[int, ...]:
    if q.dim < 1:
        raise FormError("forms need at least one entry")
    if any(e.r != T.r for e in q.entries):
        raise FormError("form entries do not belong to this tower")
    return tuple(sorted(q.codes))


def decide_isotropy(T: Tower, q: ClassForm) -> Tuple[bool, int]:
    """Isotropy decision together with the depth of the Springer recursion."""
    return _isotropic(_check(T, q), T.r, _minus_one_code(T.p))


def is_isotropic(T: Tower, q: ClassForm) -> bool:
    return decide_isotropy(T, q)[0]


def _iso_codes(codes: Sequence[int], r: int, m1: int) -> bool:
    return _isotropic(tuple(sorted(codes)), r, m1)[0]


def _represents_codes(codes: Sequence[int], a: int, r: int, m1: int) -> bool:
    return _iso_codes(tuple(codes) + (a ^ m1,), r, m1)


def _universal_codes(codes: Sequence[int], r: int, m1: int) -> bool:
    return all(_represents_codes(codes, a, r, m1) for a in range(2 ** (r + 1)))


def represents(T: Tower, q: ClassForm, a: SquareClass) -> bool:
    """q represents a iff q + <-a> is isotropic."""
    _check(T, q)
    return _represents_codes(q.codes, a.code, T.r, _minus_one_code(T.p))


def is_universal(T: Tower, q: ClassForm) -> bool:
    _check(T, q)
    return _universal_codes(q.codes, T.r, _minus_one_code(T.p))


def is_anisotropic_universal(T: Tower, q: ClassForm) -> bool:
    return not is_isotropic(T, q) and is_universal(T, q)


def split_residue_forms(T: Tower, q: ClassForm) -> Tuple[ClassForm, ClassForm]:
    """(unit part, t_r part) as forms over the residue tower; either may be empty."""
    if T.r == 0:
        raise FormError("F_p has no uniformizer to split along")
    bit = 1 << T.r
    unit = ClassForm.from_codes((c for c in q.codes if not c & bit), T.r - 1)
    pi = ClassForm.from_codes((c ^ bit for c in q.codes if c & bit), T.r - 1)
    return unit, pi


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


class AUResult(NamedTuple):
    au: FrozenSet[int]
    m: Optional[int]
    u: Optional[int]


def _require_cap(T: Tower, max_r: int) -> None:
    if T.r > max_r:
        raise CapExceeded(
            f"r={T.r} exceeds the enumeration cap {max_r}; "
            f"about {anisotropic_form_bound(T)} anisotropic forms would be visited"
        )


def anisotropic_form_bound(T: Tower) -> int:
    """Upper bound on the number of anisotropic class multisets.

    An anisotropic form has at most two entries sharing any one valuation
    pattern, so each of the 2**r patterns contributes one of a handful of
    choices (empty, one entry, or an anisotropic binary form).
    """
    binary = 2 if T.p % 4 == 3 else 1
    return (3 + binary) ** (2**T.r)


def au_enumerate(T: Tower, max_dim: Optional[int] = None, max_r: int = DEFAULT_MAX_R) -> AUResult:
    """Dimensions of anisotropic universal forms, by exhaustive search.

    Forms are enumerated as multisets of classes containing the trivial
    class (every form can be scaled to one).  A multiset is only extended
    while it stays anisotropic, since a form containing an isotropic
    subform is isotropic.
    """
    _require_cap(T, max_r)
    if max_dim is None:
        max_dim = T.class_count
    r, m1, n = T.r, _minus_one_code(T.p), T.class_count
    found = set()

    def extend(prefix: Tuple[int, ...]) -> None:
        if _universal_codes(prefix, r, m1):
            found.add(len(prefix))
        if len(prefix) == max_dim:
            return
        for c in range(prefix[-1], n):
            q = prefix + (c,)
            if not _iso_codes(q, r, m1):
                extend(q)

    if max_dim >= 1:
        extend((0,))
    au = frozenset(found)
    return AUResult(au, min(au) if au else None, max(au) if au else None)


def kaplansky_radical(T: Tower, max_r: int = DEFAULT_MAX_R) -> FrozenSet[SquareClass]:
    """Classes a with <1, -a> universal."""
    _require_cap(T, max_r)
    m1 = _minus_one_code(T.p)
    return frozenset(
        a for a in T.classes() if _universal_codes((0, a.code ^ m1), T.r, m1)
    )
