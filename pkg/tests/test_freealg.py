import math

import pytest
from hypothesis import given, settings, strategies as st

from commdet import freealg as fa
from commdet.errors import ParseError, ValidationError

from oracles import perm_sign


def test_letters_and_words():
    assert str(fa.Ts(2)) == "T2*"
    assert fa.word_str(()) == "I"
    assert fa.word_adjoint((fa.T(1), fa.Ts(2))) == (fa.T(2), fa.Ts(1))
    with pytest.raises(ValidationError):
        fa.T(0)


def test_formal_sum_drops_zeros():
    s = fa.FormalSum.word(fa.T(1)) - fa.FormalSum.word(fa.T(1))
    assert s.is_zero() and len(s) == 0 and str(s) == "0"


@pytest.mark.parametrize("n", range(1, 6))
def test_signs_match_cycle_oracle(n):
    for sign, p in fa.signed_permutations(n):
        assert sign == perm_sign(p)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_det_equals_gc_symbolically(d):
    det = fa.normal_form(fa.det_expansion(d))
    assert det == fa.normal_form(fa.gc_expansion(d))
    assert det == fa.normal_form(fa.product_route_expansion(d))


def test_raw_term_counts():
    for d in (1, 2, 3):
        assert sum(1 for _ in fa.det_expansion_terms(d)) == math.factorial(d) ** 2 * 2 ** d
        assert len(fa.gc_expansion(d)) == math.factorial(2 * d)


def test_known_coefficient_d2():
    nf = fa.normal_form(fa.gc_expansion(2))
    assert nf.coefficient((fa.Ts(1), fa.T(1), fa.Ts(2), fa.T(2))) == 1


def test_commutator_entry():
    assert fa.commutator_entry(1, 2) == fa.parse_word_expr("T2* T1 - T1 T2*")


@pytest.mark.parametrize("d", [1, 2, 3])
def test_gc_is_self_adjoint(d):
    g = fa.gc_expansion(d)
    assert g.adjoint() == g


def test_parse_examples():
    s = fa.parse_word_expr("T1* T1 - T1 T1*")
    assert s.certificate_lines() == ["-1 T1 T1*", "+1 T1* T1"]
    assert fa.parse_word_expr("-2 T1 T2 + T2 T1").coefficient((fa.T(1), fa.T(2))) == -2


@pytest.mark.parametrize("text,pos", [("T1 **", 4), ("T1 + ", 5), ("T1 $", 3), ("", 0)])
def test_parse_error_positions(text, pos):
    with pytest.raises(ParseError) as exc:
        fa.parse_word_expr(text)
    assert exc.value.position == pos


def test_parse_index_out_of_range():
    with pytest.raises(ValidationError):
        fa.parse_word_expr("T3", d=2)


words = st.lists(st.tuples(st.integers(1, 3), st.booleans()), min_size=0, max_size=5).map(
    lambda ws: tuple(fa.Letter(i, s) for i, s in ws))
sums = st.lists(st.tuples(words, st.integers(-3, 3)), max_size=5).map(fa.FormalSum)


@settings(max_examples=100, deadline=None)
@given(sums, sums, sums)
def test_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert (a * b).adjoint() == b.adjoint() * a.adjoint()
    assert a.adjoint().adjoint() == a


@settings(max_examples=100, deadline=None)
@given(sums)
def test_normal_form_idempotent(a):
    nf = a.normal_form()
    assert nf.normal_form() == nf


@settings(max_examples=100, deadline=None)
@given(sums)
def test_str_parse_roundtrip(a):
    if a.is_zero() or () in a:
        return
    assert fa.parse_word_expr(str(a)) == a
