import random

from hypothesis import given, settings
from hypothesis import strategies as st

from quadinv.calculus import au_set, m_invariant, sumset, u_invariant
from quadinv.descriptors import (
    Base,
    BaseClass,
    Cdvf,
    RationalFnField,
    SemiGlobal,
    floor_pow2,
    is_ms_us_computable,
    laurent,
    ms_us,
    validate,
)
from quadinv.dsl import parse_element, parse_field, parse_form, print_field
from quadinv.forms import (
    ClassForm,
    SquareClass,
    Tower,
    class_of_element,
    is_anisotropic_universal,
    is_isotropic,
    is_universal,
    split_residue_forms,
)
from quadinv.laurent import LaurentElement
from quadinv.layers import field_layer, m_from_layer, random_semiglobal
from quadinv.oracle import verify_certificate, witness_search

towers = st.builds(Tower, st.sampled_from([3, 5, 7, 13]), st.integers(0, 2))


@st.composite
def tower_forms(draw, max_dim=7):
    T = draw(towers)
    codes = draw(st.lists(st.integers(0, T.class_count - 1), min_size=1, max_size=max_dim))
    return T, ClassForm.from_codes(codes, T.r)


@st.composite
def tower_classes(draw, T):
    return SquareClass.from_code(draw(st.integers(0, T.class_count - 1)), T.r)


@st.composite
def elements(draw, p, r, nonzero=True):
    terms = draw(
        st.dictionaries(
            st.tuples(*[st.integers(-3, 3)] * r),
            st.integers(1, p - 1),
            min_size=1 if nonzero else 0,
            max_size=4,
        )
    )
    return LaurentElement(p, r, terms)


@given(tower_forms(), st.data())
@settings(max_examples=300)
def test_scaling_invariance(tf, data):
    T, q = tf
    a = data.draw(tower_classes(T))
    assert is_isotropic(T, q) == is_isotropic(T, q.scaled(a))
    assert is_universal(T, q) == is_universal(T, q.scaled(a))


@given(tower_forms(), st.randoms(use_true_random=False))
@settings(max_examples=300)
def test_permutation_invariance(tf, rnd):
    T, q = tf
    entries = list(q.entries)
    rnd.shuffle(entries)
    p = ClassForm(tuple(entries))
    assert is_isotropic(T, q) == is_isotropic(T, p)
    assert is_universal(T, q) == is_universal(T, p)


@given(tower_forms())
def test_isotropic_forms_are_universal(tf):
    T, q = tf
    if q.dim >= 2 and is_isotropic(T, q):
        assert is_universal(T, q)


@given(tower_forms(max_dim=8))
def test_residue_form_law(tf):
    T, q = tf
    if T.r == 0:
        return
    R = T.residue_tower()
    parts = split_residue_forms(T, q)
    expect = all(p.dim > 0 and is_anisotropic_universal(R, p) for p in parts)
    assert is_anisotropic_universal(T, q) == expect


@given(st.sampled_from([3, 5, 7]), st.integers(1, 2), st.data())
def test_class_of_element_is_a_homomorphism(p, r, data):
    T = Tower(p, r)
    a = data.draw(elements(p, r))
    b = data.draw(elements(p, r))
    assert class_of_element(T, a * b) == class_of_element(T, a) * class_of_element(T, b)
    assert class_of_element(T, a * b * b) == class_of_element(T, a)


@given(st.sampled_from([3, 5]), st.data())
@settings(max_examples=60, deadline=None)
def test_certificates_are_sound_for_element_forms(p, data):
    T = Tower(p, 1)
    q = data.draw(st.lists(elements(p, 1), min_size=2, max_size=3))
    res = witness_search(T, q, 1, budget=3000)
    if res.certificate is not None:
        assert verify_certificate(T, q, res.certificate)
        classes = ClassForm(tuple(class_of_element(T, a) for a in q))
        assert is_isotropic(T, classes)


@given(tower_forms())
def test_form_round_trip(tf):
    T, q = tf
    assert parse_form(str(q), T) == q


@given(st.sampled_from([3, 5, 7]), st.integers(1, 3), st.data())
def test_element_round_trip(p, r, data):
    e = data.draw(elements(p, r))
    assert parse_element(str(e), Tower(p, r)) == e


bases = st.sampled_from(
    [BaseClass.algclosed(), BaseClass.finite(3), BaseClass.finite(13), BaseClass.custom(2, True)]
)


@st.composite
def ms_fields(draw):
    k = draw(st.sampled_from([Base(draw(bases)), RationalFnField(Base(BaseClass.algclosed()))]))
    return laurent(k, draw(st.integers(0, 4)))


@st.composite
def fields(draw):
    kind = draw(st.sampled_from(["ms", "ratfn", "semiglobal"]))
    if kind == "ms":
        return draw(ms_fields())
    if kind == "ratfn":
        return RationalFnField(draw(ms_fields()))
    rng = random.Random(draw(st.integers(0, 2**32)))
    return random_semiglobal(draw(st.integers(1, 4)), draw(bases), rng)


@given(fields())
def test_descriptor_round_trip(f):
    assert validate(f) == []
    assert parse_field(print_field(f)) == f


@given(fields())
def test_m_u_sandwich(f):
    m, u = m_invariant(f), u_invariant(f)
    assert m == min(au_set(f)) and u == max(au_set(f))
    assert m not in (3, 5)
    assert m <= floor_pow2(u) <= u


@given(ms_fields())
def test_cdvf_sumset_and_doubling(k):
    assert au_set(Cdvf(k)) == sumset(au_set(k))
    assert ms_us(Cdvf(k)) == 2 * ms_us(k)


@given(fields())
def test_function_fields_bounded_by_twice_ms_us(f):
    if isinstance(f, (RationalFnField, SemiGlobal)):
        K = f.over
        assert is_ms_us_computable(K)
        assert u_invariant(f) == 2 * ms_us(K)
        assert m_invariant(f) <= 2 * ms_us(K)


@given(st.integers(0, 2**32), st.integers(1, 4), bases)
def test_two_in_au_iff_graph_not_tree(seed, n, base):
    f = random_semiglobal(n, base, random.Random(seed))
    assert (2 in au_set(f)) == (not f.model.is_tree)


@given(st.integers(0, 2**32), st.integers(1, 4), bases)
def test_layer_formula_matches_au_minimum(seed, n, base):
    f = random_semiglobal(n, base, random.Random(seed))
    assert m_from_layer(f) == m_invariant(f)
    j = field_layer(f)
    assert j == float("inf") or 1 <= j <= n
