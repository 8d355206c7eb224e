"""Acceptance criteria, one test per criterion, each under its time bound.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary lists
PASS/FAIL per criterion.  ``python3 tests/test_acceptance.py`` prints the
same lines without pytest.
"""

import itertools
import random
import time

from quadinv.calculus import au_set, m_invariant, possible_m, sumset, u_invariant
from quadinv.descriptors import (
    INF,
    Base,
    BaseClass,
    RationalFnField,
    SemiGlobal,
    floor_pow2,
    laurent,
)
from quadinv.forms import (
    ClassForm,
    SquareClass,
    Tower,
    au_enumerate,
    is_anisotropic_universal,
    is_isotropic,
    is_universal,
    split_residue_forms,
)
from quadinv.layers import (
    attainable_au,
    build_component_tree,
    layer,
    m_from_layer,
    make_fully_arboreal_example,
    make_layer_example,
    random_semiglobal,
)
from quadinv.models import LEAF, loop_model, tree_model
from quadinv.oracle import CERTIFIED, CONFIRMED, cross_validate

import independent

PRIMES = (3, 5, 7, 13)
ALG = BaseClass.algclosed()
FIN = BaseClass.finite(3)


class Timer:
    def __init__(self, bound):
        self.bound = bound

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.bound, f"took {self.elapsed:.2f}s, bound {self.bound}s"


def fs(*xs):
    return frozenset(xs)


def test_criterion_1():
    with Timer(1.0):
        for p in PRIMES:
            res = au_enumerate(Tower(p, 0))
            assert (res.au, res.m, res.u) == (fs(2), 2, 2)


def test_criterion_2():
    with Timer(30.0):
        for p in PRIMES:
            below = au_enumerate(Tower(p, 0)).au
            res = au_enumerate(Tower(p, 1))
            assert res.au == fs(4) == sumset(below)
            assert res.au == au_set(laurent(Base(BaseClass.finite(p))))
        res = au_enumerate(Tower(3, 2))
        assert res.au == fs(8) == sumset(au_enumerate(Tower(3, 1)).au)
        assert res.au == au_set(laurent(Base(FIN), 2))


def test_criterion_3():
    with Timer(1.0):
        for p in PRIMES:
            fin = Base(BaseClass.finite(p))
            assert m_invariant(RationalFnField(laurent(fin))) == 8
            for r in range(1, 5):
                assert m_invariant(RationalFnField(laurent(fin, r))) == 2 ** (r + 2)
        assert m_invariant(RationalFnField(laurent(RationalFnField(Base(ALG))))) == 8


def test_criterion_4():
    with Timer(1.0):
        for base, top in ((FIN, 8), (ALG, 4)):
            K = laurent(Base(base))
            for comps in ((LEAF,), (LEAF, LEAF), (LEAF, LEAF, LEAF)):
                assert au_set(SemiGlobal(K, tree_model(*comps))) == fs(top)
                assert au_set(SemiGlobal(K, loop_model(*comps))) == fs(2, top)


KNOWN_AU_2_FINITE = {fs(16), fs(2, 16), fs(4, 10, 16), fs(2, 4, 10, 16)}
KNOWN_AU_3_ALGCLOSED = {
    fs(16),
    fs(4, 10, 16),
    fs(8, 10, 12, 14, 16),
    fs(4, 8, 10, 12, 14, 16),
    fs(4, 6, 8, 10, 12, 14, 16),
    fs(2, 16),
    fs(2, 4, 10, 16),
    fs(2, 8, 10, 12, 14, 16),
    fs(2, 4, 8, 10, 12, 14, 16),
    fs(2, 4, 6, 8, 10, 12, 14, 16),
}


def test_criterion_5():
    with Timer(5.0):
        a2 = attainable_au(2, FIN)
        a3 = attainable_au(3, ALG)
        assert len(a2) == 4 and set(a2) == KNOWN_AU_2_FINITE
        assert len(a3) == 10 and set(a3) == KNOWN_AU_3_ALGCLOSED


def test_criterion_6():
    with Timer(10.0):
        for base, eps in ((ALG, 1), (FIN, 2)):
            for n in range(1, 5):
                for j in range(1, n + 1):
                    f = make_layer_example(n, j, base)
                    assert layer(build_component_tree(f)) == j
                    assert m_from_layer(f) == 2**j == m_invariant(f)
                f = make_fully_arboreal_example(n, base)
                assert layer(build_component_tree(f)) == INF
                assert m_from_layer(f) == 2 ** (n + eps) == m_invariant(f)
        rng = random.Random(20240607)
        for base in (ALG, FIN):
            for n in range(1, 4):
                for _ in range(200):
                    f = random_semiglobal(n, base, rng)
                    assert m_from_layer(f) == m_invariant(f), f


def test_criterion_7():
    with Timer(5.0):
        for base in (ALG, FIN):
            for n in range(1, 4):
                assert possible_m(n, base) == {min(u) for u in attainable_au(n, base)}


def test_criterion_8():
    with Timer(60.0):
        ex = cross_validate(Tower(3, 1), range(1, 5), "exhaustive")
        assert ex.contradictions == []
        assert ex.all_isotropic_certified
        assert any(r.oracle == CERTIFIED for r in ex.records)
        rnd = cross_validate(Tower(5, 1), range(1, 6), "random:1000:42")
        assert len(rnd.records) == 1000
        assert rnd.contradictions == []
        decided = rnd.count(CERTIFIED) + rnd.count(CONFIRMED)
        assert decided >= 0.95 * len(rnd.records)


PROPERTY_TOWERS = [(p, r) for p in (3, 5, 7, 13) for r in (0, 1, 2)]


def _scaling_and_permutation(rng):
    for p, r in PROPERTY_TOWERS:
        T = Tower(p, r)
        for _ in range(500):
            d = rng.randint(1, 2 ** (r + 1) + 1)
            q = ClassForm.from_codes([rng.randrange(T.class_count) for _ in range(d)], r)
            a = SquareClass.from_code(rng.randrange(T.class_count), r)
            perm = list(q.entries)
            rng.shuffle(perm)
            perm = ClassForm(tuple(perm))
            iso, uni = is_isotropic(T, q), is_universal(T, q)
            assert is_isotropic(T, q.scaled(a)) == iso == is_isotropic(T, perm)
            assert is_universal(T, q.scaled(a)) == uni == is_universal(T, perm)


def _residue_form_law():
    for p in (3, 5, 7):
        T = Tower(p, 1)
        for d in range(1, 7):
            for codes in itertools.combinations_with_replacement(range(4), d):
                q = ClassForm.from_codes(codes, 1)
                q1, q2 = split_residue_forms(T, q)
                expect = all(
                    part.dim > 0
                    and not independent.fp_isotropic(p, independent.fp_coeffs(p, [e.eps for e in part.entries]))
                    and independent.fp_universal(p, independent.fp_coeffs(p, [e.eps for e in part.entries]))
                    for part in (q1, q2)
                )
                assert is_anisotropic_universal(T, q) == expect, (p, q)


def _sandwich(m, u):
    assert m not in (3, 5)
    assert m <= floor_pow2(u) <= u


def _computed_fields(rng):
    fields = []
    for p in PRIMES:
        fin = Base(BaseClass.finite(p))
        fields += [fin, RationalFnField(laurent(fin))]
        fields += [laurent(fin, r) for r in range(1, 5)]
        fields += [RationalFnField(laurent(fin, r)) for r in range(1, 5)]
    fields += [Base(ALG), laurent(Base(ALG)), RationalFnField(laurent(RationalFnField(Base(ALG))))]
    for base in (ALG, FIN):
        for n in range(1, 5):
            fields += [make_layer_example(n, j, base) for j in range(1, n + 1)]
            fields.append(make_fully_arboreal_example(n, base))
        for n in range(1, 4):
            fields += [random_semiglobal(n, base, rng) for _ in range(100)]
    return fields


def test_criterion_9():
    with Timer(30.0):
        rng = random.Random(9)
        _scaling_and_permutation(rng)
        _residue_form_law()
        for f in _computed_fields(rng):
            _sandwich(m_invariant(f), u_invariant(f))
        for base in (ALG, FIN):
            for n in range(1, 4):
                for U in attainable_au(n, base):
                    _sandwich(min(U), max(U))
        for p in PRIMES:
            for r in (0, 1, 2):
                res = au_enumerate(Tower(p, r))
                _sandwich(res.m, res.u)


CRITERIA = [
    test_criterion_1,
    test_criterion_2,
    test_criterion_3,
    test_criterion_4,
    test_criterion_5,
    test_criterion_6,
    test_criterion_7,
    test_criterion_8,
    test_criterion_9,
]


if __name__ == "__main__":
    for i, crit in enumerate(CRITERIA, 1):
        start = time.perf_counter()
        try:
            crit()
            status = "PASS"
        except AssertionError as e:
            status = f"FAIL ({e})"
        print(f"criterion {i}: {status} [{time.perf_counter() - start:.2f}s]")
