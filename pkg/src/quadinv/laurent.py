"""Exact multivariate Laurent polynomials over F_p.

These are the concrete elements of F_p((t_1))...((t_r)) the oracle works
with.  An element is a sparse map from exponent vectors to nonzero
coefficients in 0..p-1; the empty map is zero.  Variable index r-1 is the
outermost uniformizer t_r.
"""

from __future__ import annotations

from typing import Dict, Iterable, Mapping, Sequence, Tuple

Exponents = Tuple[int, ...]


class LaurentElement:
    __slots__ = ("p", "r", "_terms", "_hash")

    def __init__(self, p: int, r: int, terms: Mapping[Exponents, int] = ()):
        clean: Dict[Exponents, int] = {}
        for e, c in dict(terms).items():
            e = tuple(e)
            if len(e) != r:
                raise ValueError(f"exponent vector {e} does not have {r} entries")
            c %= p
            if c:
                clean[e] = c
        self.p = p
        self.r = r
        self._terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, p: int, r: int, c: int) -> "LaurentElement":
        return cls(p, r, {(0,) * r: c})

    @classmethod
    def monomial(cls, p: int, r: int, exps: Sequence[int], c: int = 1) -> "LaurentElement":
        return cls(p, r, {tuple(exps): c})

    def _like(self, terms) -> "LaurentElement":
        return LaurentElement(self.p, self.r, terms)

    # -- accessors --------------------------------------------------------

    @property
    def terms(self) -> Dict[Exponents, int]:
        return dict(self._terms)

    def items(self) -> Iterable[Tuple[Exponents, int]]:
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def valuation(self, var: int = None) -> float:
        """Adic valuation in variable ``var`` (default: outermost); inf for zero."""
        if var is None:
            var = self.r - 1
        if not self._terms:
            return float("inf")
        return min(e[var] for e in self._terms)

    def leading_coefficient(self) -> "LaurentElement":
        """Coefficient of t_r**v, v the t_r-adic valuation, in the first r-1 variables."""
        if not self._terms:
            raise ZeroDivisionError("zero has no leading coefficient")
        v = self.valuation()
        return LaurentElement(
            self.p, self.r - 1, {e[:-1]: c for e, c in self._terms.items() if e[-1] == v}
        )

    def constant_value(self) -> int:
        if self.r != 0:
            raise ValueError("only elements with r = 0 are constants")
        return self._terms.get((), 0)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "LaurentElement":
        if isinstance(other, LaurentElement):
            if (other.p, other.r) != (self.p, self.r):
                raise ValueError("elements live in different towers")
            return other
        if isinstance(other, int):
            return LaurentElement.constant(self.p, self.r, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Exponents, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = (out.get(e, 0) + c1 * c2) % self.p
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("only nonnegative powers of a polynomial are polynomials")
        out = LaurentElement.constant(self.p, self.r, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, var: int, k: int) -> "LaurentElement":
        """Multiply by t_{var+1}**k."""
        return self._like(
            {e[:var] + (e[var] + k,) + e[var + 1 :]: c for e, c in self._terms.items()}
        )

    def evaluate(self, point: Sequence[int]) -> int:
        """Value in F_p at a point with nonzero coordinates."""
        if len(point) != self.r:
            raise ValueError(f"need {self.r} coordinates")
        if any(x % self.p == 0 for x in point):
            raise ZeroDivisionError("Laurent polynomials need nonzero coordinates")
        total = 0
        for e, c in self._terms.items():
            term = c
            for x, k in zip(point, e):
                term = term * pow(x, k, self.p)
            total += term
        return total % self.p

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentElement.constant(self.p, self.r, other)
        if not isinstance(other, LaurentElement):
            return NotImplemented
        return (self.p, self.r, self._terms) == (other.p, other.r, other._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.r, tuple(sorted(self._terms.items()))))
        return self._hash

    def __repr__(self):
        return f"LaurentElement(p={self.p}, r={self.r}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            mono = "*".join(
                f"t{i + 1}" if k == 1 else f"t{i + 1}^{k}" for i, k in enumerate(e) if k
            )
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)
