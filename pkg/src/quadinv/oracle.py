"""Independent checks for the Springer decision procedure.

Isotropic decisions are backed by explicit vectors: a Hensel certificate is
a primitive vector x of Laurent polynomials and a pivot coordinate j with

    v(q(x)) > 2 v(a_j x_j)

in the outermost valuation, which by Newton's lemma on the single variable
x_j guarantees a true zero of q in the complete field.  Anisotropic
decisions are re-derived by splitting along each uniformizer down to forms
over F_p and checking those by brute force.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from .errors import BudgetExceeded, FormError
from .forms import ClassForm, Tower, is_isotropic, representative
from .laurent import LaurentElement

INF = float("inf")

DEFAULT_FP_BUDGET = 10**7
DEFAULT_SEARCH_BUDGET = 200_000

ElementForm = Sequence[LaurentElement]


# ---------------------------------------------------------------------------
# F_p brute force
# ---------------------------------------------------------------------------


def class_form_coefficients(p: int, q: ClassForm) -> List[int]:
    """Canonical integer entries (1 or the least non-residue) of a form over F_p."""
    T = Tower(p, 0)
    return [representative(T, a).constant_value() for a in q.entries]


def fp_isotropy_witness(
    p: int, q: Union[ClassForm, Sequence[int]], budget: int = DEFAULT_FP_BUDGET
) -> Optional[Tuple[int, ...]]:
    """A nonzero zero of sum(q_i x_i^2) over F_p, first nonzero coordinate 1.

    Scans F_p^dim exhaustively in lexicographic order; None means there is
    no isotropic vector at all.
    """
    coeffs = class_form_coefficients(p, q) if isinstance(q, ClassForm) else [c % p for c in q]
    if not coeffs or any(c == 0 for c in coeffs):
        raise FormError("need a nonempty form with nonzero entries")
    dim = len(coeffs)
    if p**dim > budget:
        raise BudgetExceeded(f"{p}^{dim} candidates exceed the budget of {budget}")
    squares = [x * x % p for x in range(p)]
    for lead in range(dim):
        rest = dim - lead - 1
        for tail in itertools.product(range(p), repeat=rest):
            total = coeffs[lead]
            for c, x in zip(coeffs[lead + 1 :], tail):
                total += c * squares[x]
            if total % p == 0:
                return (0,) * lead + (1,) + tail
    return None


def fp_image(p: int, coeffs: Sequence[int]) -> frozenset:
    """All values of the form on F_p^dim minus the origin."""
    vals = set()
    for x in itertools.product(range(p), repeat=len(coeffs)):
        if any(x):
            vals.add(sum(c * v * v for c, v in zip(coeffs, x)) % p)
    return frozenset(vals)


# ---------------------------------------------------------------------------
# Certificates over towers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HenselCertificate:
    witness: Tuple[LaurentElement, ...]
    pivot: int
    slack: Tuple[float, float]  # (v(q(x)), v(a_pivot x_pivot)); v(q(x)) = inf for an exact zero

    @property
    def exact(self) -> bool:
        return self.slack[0] == INF

    def __str__(self):
        xs = ", ".join(str(x) for x in self.witness)
        return f"witness=({xs}) pivot={self.pivot} slack={self.slack}"


def form_elements(T: Tower, q: Union[ClassForm, ElementForm]) -> List[LaurentElement]:
    """Entries of ``q`` as elements with outermost valuation 0 or 1.

    Class forms use canonical representatives; element entries are scaled by
    even powers of t_r, which keeps their square classes.
    """
    if isinstance(q, ClassForm):
        return [representative(T, a) for a in q.entries]
    out = []
    for a in q:
        if (a.p, a.r) != (T.p, T.r):
            raise FormError("entry does not belong to this tower")
        if a.is_zero():
            raise FormError("zero entry")
        v = int(a.valuation())
        out.append(a.shift(T.r - 1, -2 * (v // 2)))
    return out


def _evaluate(coeffs: Sequence[LaurentElement], x: Sequence[LaurentElement]) -> LaurentElement:
    total = LaurentElement(coeffs[0].p, coeffs[0].r)
    for a, xi in zip(coeffs, x):
        if xi:
            total = total + a * xi * xi
    return total


def _certificate_for(coeffs, x) -> Optional[HenselCertificate]:
    nonzero = [i for i, xi in enumerate(x) if xi]
    if not nonzero:
        return None
    vmin = min(int(x[i].valuation()) for i in nonzero)
    if vmin:
        x = [xi.shift(xi.r - 1, -vmin) for xi in x]
    vq = _evaluate(coeffs, x).valuation()
    vd, j = min((coeffs[i] * x[i]).valuation() for i in nonzero), None
    for i in nonzero:
        if (coeffs[i] * x[i]).valuation() == vd:
            j = i
            break
    if vq > 2 * vd:
        return HenselCertificate(tuple(x), j, (vq, vd))
    return None


def verify_certificate(
    T: Tower, q: Union[ClassForm, ElementForm], c: HenselCertificate
) -> bool:
    """Recompute everything a certificate claims, with exact arithmetic."""
    try:
        coeffs = form_elements(T, q)
    except FormError:
        return False
    x = c.witness
    if len(x) != len(coeffs) or T.r < 1:
        return False
    if any((xi.p, xi.r) != (T.p, T.r) for xi in x):
        return False
    nonzero = [xi for xi in x if xi]
    if not nonzero or min(xi.valuation() for xi in nonzero) != 0:
        return False
    if not (0 <= c.pivot < len(x)) or not x[c.pivot]:
        return False
    vq = _evaluate(coeffs, x).valuation()
    vd = (coeffs[c.pivot] * x[c.pivot]).valuation()
    if (vq, vd) != tuple(c.slack):
        return False
    return vq > 2 * vd


@dataclass
class SearchResult:
    certificate: Optional[HenselCertificate]
    examined: int
    reason: str = ""

    def __bool__(self):
        return self.certificate is not None


def _candidates(T: Tower, bound: int, unit_only: bool) -> List[Tuple[int, LaurentElement]]:
    """(degree, c * monomial) for exponents in [-bound, bound]^r, lowest degree first."""
    out = []
    coeffs = [1] if unit_only else range(1, T.p)
    for exps in itertools.product(range(-bound, bound + 1), repeat=T.r):
        deg = max((abs(e) for e in exps), default=0)
        for c in coeffs:
            out.append((deg, LaurentElement.monomial(T.p, T.r, exps, c)))
    out.sort(key=lambda dc: dc[0])
    return out


def _vectors(T: Tower, dim: int, bound: int) -> Iterator[Tuple[int, Tuple[LaurentElement, ...]]]:
    zero = (0, LaurentElement(T.p, T.r))
    leads = _candidates(T, bound, unit_only=True)
    full = [zero] + _candidates(T, bound, unit_only=False)
    for k in range(dim):
        for lead in leads:
            for tail in itertools.product(full, repeat=dim - k - 1):
                deg = max([lead[0]] + [d for d, _ in tail])
                yield deg, (zero[1],) * k + (lead[1],) + tuple(x for _, x in tail)


def witness_search(
    T: Tower,
    q: Union[ClassForm, ElementForm],
    degree_bound: int = 0,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> SearchResult:
    """Look for a Hensel certificate among monomial vectors of bounded degree.

    Degrees are tried in increasing order.  Running out of budget or
    candidates proves nothing about anisotropy.
    """
    if T.r < 1:
        raise FormError("witness search needs at least one uniformizer")
    coeffs = form_elements(T, q)
    if len(coeffs) < 2:
        return SearchResult(None, 0, "forms of dimension 1 are anisotropic")
    examined = 0
    for bound in range(degree_bound + 1):
        for deg, x in _vectors(T, len(coeffs), bound):
            if deg < bound:
                continue
            examined += 1
            if examined > budget:
                return SearchResult(None, examined - 1, f"budget of {budget} candidates exhausted")
            cert = _certificate_for(coeffs, x)
            if cert is not None:
                return SearchResult(cert, examined)
    return SearchResult(None, examined, f"no certificate with degree <= {degree_bound}")


# ---------------------------------------------------------------------------
# Cross-validation harness
# ---------------------------------------------------------------------------

CERTIFIED = "certified-isotropic"
CONFIRMED = "confirmed-anisotropic"
INCONCLUSIVE = "inconclusive"


def base_residue_forms(T: Tower, q: ClassForm) -> List[Tuple[Tuple[int, ...], ClassForm]]:
    """Split along t_r, ..., t_1: the nonempty forms over F_p, with the indices
    of the entries of ``q`` each one came from."""
    groups = [(tuple(range(q.dim)), q.codes)]
    for level in range(T.r, 0, -1):
        bit = 1 << level
        nxt = []
        for idx, codes in groups:
            for want in (0, bit):
                part = [(i, c & ~bit) for i, c in zip(idx, codes) if c & bit == want]
                if part:
                    nxt.append((tuple(i for i, _ in part), tuple(c for _, c in part)))
        groups = nxt
    return [(idx, ClassForm.from_codes(codes, 0)) for idx, codes in groups]


def lift_base_witness(
    T: Tower, q: ClassForm, idx: Sequence[int], x: Sequence[int]
) -> Tuple[LaurentElement, ...]:
    """Place an F_p zero of one base residue form into the matching coordinates.

    Those entries share one monomial, so the lifted vector is an exact zero.
    """
    out = [LaurentElement(T.p, T.r) for _ in range(q.dim)]
    for i, xi in zip(idx, x):
        out[i] = LaurentElement.constant(T.p, T.r, xi)
    return tuple(out)


@dataclass(frozen=True)
class Record:
    form: ClassForm
    engine: str  # "isotropic" | "anisotropic"
    oracle: str  # CERTIFIED | CONFIRMED | INCONCLUSIVE

    @property
    def contradiction(self) -> bool:
        return (self.engine == "anisotropic" and self.oracle == CERTIFIED) or (
            self.engine == "isotropic" and self.oracle == CONFIRMED
        )

    def to_line(self) -> str:
        return f"form={self.form} engine={self.engine} oracle={self.oracle}"


@dataclass
class ValidationReport:
    tower: Tower
    mode: str
    records: List[Record] = field(default_factory=list)

    def count(self, outcome: str) -> int:
        return sum(1 for r in self.records if r.oracle == outcome)

    @property
    def contradictions(self) -> List[Record]:
        return [r for r in self.records if r.contradiction]

    @property
    def all_isotropic_certified(self) -> bool:
        return all(r.oracle == CERTIFIED for r in self.records if r.engine == "isotropic")

    def summary(self) -> dict:
        return {
            "tower": f"{self.tower.p},{self.tower.r}",
            "mode": self.mode,
            "total": len(self.records),
            CERTIFIED: self.count(CERTIFIED),
            CONFIRMED: self.count(CONFIRMED),
            INCONCLUSIVE: self.count(INCONCLUSIVE),
            "contradictions": len(self.contradictions),
        }

    def to_dict(self) -> dict:
        return {
            "records": [
                {"form": str(r.form), "engine": r.engine, "oracle": r.oracle} for r in self.records
            ],
            "summary": self.summary(),
        }

    def to_text(self) -> str:
        lines = [r.to_line() for r in self.records]
        lines.append("# summary")
        lines += [f"{k}={v}" for k, v in self.summary().items()]
        return "\n".join(lines) + "\n"


def parse_mode(mode: str) -> Tuple[str, int, int]:
    """``exhaustive`` or ``random:N:SEED``."""
    if mode == "exhaustive":
        return "exhaustive", 0, 0
    parts = mode.split(":")
    if len(parts) == 3 and parts[0] == "random":
        return "random", int(parts[1]), int(parts[2])
    raise ValueError(f"unknown mode {mode!r}; use exhaustive or random:N:SEED")


def sample_forms(T: Tower, dims: range, mode: str) -> Iterator[ClassForm]:
    kind, n, seed = parse_mode(mode)
    k = T.class_count
    if kind == "exhaustive":
        for d in dims:
            for codes in itertools.combinations_with_replacement(range(k), d):
                yield ClassForm.from_codes(codes, T.r)
    else:
        rng = random.Random(seed)
        for _ in range(n):
            d = rng.choice(dims)
            yield ClassForm.from_codes([rng.randrange(k) for _ in range(d)], T.r)


def check_form(
    T: Tower, q: ClassForm, degree_bound: int = 0, budget: int = DEFAULT_SEARCH_BUDGET
) -> Record:
    engine_iso = is_isotropic(T, q)
    engine = "isotropic" if engine_iso else "anisotropic"
    if T.r == 0:
        x = fp_isotropy_witness(T.p, q)
        return Record(q, engine, CERTIFIED if x is not None else CONFIRMED)
    if engine_iso:
        found = witness_search(T, q, degree_bound, budget)
        ok = found.certificate is not None and verify_certificate(T, q, found.certificate)
        return Record(q, engine, CERTIFIED if ok else INCONCLUSIVE)
    for idx, base in base_residue_forms(T, q):
        x = fp_isotropy_witness(T.p, base)
        if x is not None:
            cert = _certificate_for(form_elements(T, q), lift_base_witness(T, q, idx, x))
            if cert is not None and verify_certificate(T, q, cert):
                return Record(q, engine, CERTIFIED)
            return Record(q, engine, INCONCLUSIVE)
    return Record(q, engine, CONFIRMED)


def cross_validate(
    T: Tower,
    dims: range,
    mode: str = "exhaustive",
    degree_bound: int = 0,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> ValidationReport:
    report = ValidationReport(T, mode)
    for q in sample_forms(T, dims, mode):
        report.records.append(check_form(T, q, degree_bound, budget))
    return report
