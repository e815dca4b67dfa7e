from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

import supersnake.superring as sr
from supersnake.superring import (
    AmbientMismatch,
    NonRepresentableRoot,
    SuperExpr,
    ThetaVar,
    canonical_string,
    div_monomial,
    mono_expr,
    mul,
    normalize,
    one,
    parse_expr,
    sqrt_monomial,
    theta_pair,
    x_var,
    zero,
)

N = 2
T1 = ThetaVar(3, 1)  # smallest in the positive order
T2 = ThetaVar(2, 2)
T3 = ThetaVar(1, 3)  # largest
RANKS = {1: 3, 2: 2, 3: 1}


def test_normalize_sorts_with_sign():
    # theta2 > theta1, so the word (T1, T2) picks up one transposition
    e = normalize(N, [(1, (0, 0), (T1, T2))])
    assert e.terms[0].coeff == -1
    assert e.terms[0].thetas == (T2, T1)


def test_normalize_kills_squares():
    assert normalize(N, [(1, (0, 0), (T2, T2))]).is_zero()


def test_normalize_cancels():
    e = normalize(N, [(1, (0, 0), (T2, T1)), (-1, (0, 0), (T2, T1))])
    assert e.is_zero()


def test_add_identity_and_order():
    a = x_var(N, 1)
    assert a + zero(N) == a
    two_terms = x_var(N, 1) + x_var(N, 2)
    # two terms, exp2-lexicographic order, stable under re-normalization
    assert len(two_terms.terms) == 2
    assert two_terms == x_var(N, 2) + x_var(N, 1)
    assert canonical_string(two_terms) == "x2 + x1"


def test_add_cancellation():
    t = mono_expr(N, (0, 1), thetas=(T2, T1))
    assert (t + (-t)).is_zero()


def test_mul_repeated_theta_vanishes():
    a = theta_pair(N, T3, T1)
    b = theta_pair(N, T3, T2)
    assert mul(a, b).is_zero()


def test_mul_disjoint_pairs_commute_with_plus_sign():
    n = 4
    ranks = [ThetaVar(5 - i, i) for i in range(1, 5)]  # t4 largest ... t1 smallest
    t1, t2, t3, t4 = ranks
    ab = theta_pair(n, t2, t1)
    cd = theta_pair(n, t4, t3)
    prod = mul(ab, cd)
    assert prod == mul(cd, ab)
    assert prod.terms[0].coeff == 1
    assert prod.terms[0].thetas == (t4, t3, t2, t1)


def test_mul_half_exponents_add():
    half = mono_expr(N, (1, 0))
    assert mul(half, half) == x_var(N, 1)


def test_div_monomial():
    a = mono_expr(N, (2, 2)) + mono_expr(N, (0, 2))
    q = div_monomial(a, (2, 2))
    assert q == one(N) + mono_expr(N, (-2, 0))
    assert div_monomial(a, (0,) * N) == a


def test_div_monomial_super_term():
    a = mono_expr(N, (0, 1), thetas=(T2, T1))
    q = div_monomial(a, (2, 2))
    assert q == mono_expr(N, (-2, -1), thetas=(T2, T1))


def test_sqrt_monomial():
    assert sqrt_monomial((2, 2)) == (1, 1)
    assert sqrt_monomial((0, 0)) == (0, 0)
    with pytest.raises(NonRepresentableRoot):
        sqrt_monomial((1, 0))


def test_canonical_string_golden():
    e = one(N) + x_var(N, 2) + mono_expr(N, (0, 1), thetas=(T2, T1))
    assert canonical_string(e) == "1 + x2 + x2^(1/2)*θ2θ1"
    assert canonical_string(zero(N)) == "0"
    assert canonical_string(mono_expr(N, (-2, 0))) == "x1^(-1)"


def test_canonical_string_coefficients():
    e = normalize(N, [(-3, (2, 0), ()), (1, (0, 0), ())])
    assert canonical_string(e) == "1 + -3*x1"


def test_parse_round_trip_golden():
    for text in ("0", "x1^(-1)", "1 + x2 + x2^(1/2)*θ2θ1",
                  "1 + -3*x1", "2*x1^(-3/2)*x2*θ3θ2θ1"):
        e = parse_expr(text, N, RANKS)
        assert canonical_string(e) == text


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        x_var(2, 1) + x_var(3, 1)


def test_even_odd_split():
    e = one(N) + mono_expr(N, (0, 1), thetas=(T2, T1)) + mono_expr(N, (0, 0), thetas=(T3,))
    assert len(e.even_part().terms) == 2
    assert len(e.odd_part().terms) == 1
    assert e.even_part() + e.odd_part() == e


# ---------------------------------------------------------------------------
# property tests

THETAS = [T1, T2, T3]


@st.composite
def exprs(draw, max_terms=4):
    terms = []
    for _ in range(draw(st.integers(0, max_terms))):
        coeff = draw(st.integers(-3, 3))
        exp2 = tuple(draw(st.integers(-2, 2)) for _ in range(N))
        subset = sorted(draw(st.sets(st.sampled_from(THETAS))))
        word = tuple(draw(st.permutations(subset))) if subset else ()
        terms.append((coeff, exp2, word))
    return normalize(N, terms)


@given(exprs(), exprs(), exprs())
@settings(max_examples=150, deadline=None)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, b + c) == mul(a, b) + mul(a, c)


@given(exprs(), exprs())
@settings(max_examples=150, deadline=None)
def test_supercommutativity_sign(a, b):
    for pa, sa in ((a.even_part(), 0), (a.odd_part(), 1)):
        for pb, sb in ((b.even_part(), 0), (b.odd_part(), 1)):
            lhs = mul(pa, pb)
            rhs = mul(pb, pa)
            assert lhs == (rhs if sa * sb == 0 else -rhs)


@given(exprs())
@settings(max_examples=100, deadline=None)
def test_normalize_idempotent(a):
    again = normalize(N, [(t.coeff, t.exp2, t.thetas) for t in a.terms])
    assert again == a


def test_theta_squares_vanish():
    for t in THETAS:
        gen = normalize(N, [(1, (0, 0), (t,))])
        assert mul(gen, gen).is_zero()
    # any word longer than the theta universe dies
    overlong = normalize(N, [(1, (0, 0), (T1, T2, T3, T1))])
    assert overlong.is_zero()


@given(exprs(), st.tuples(st.integers(-2, 2), st.integers(-2, 2)))
@settings(max_examples=100, deadline=None)
def test_div_undoes_mul(a, m):
    prod = mul(a, mono_expr(N, m))
    assert div_monomial(prod, m) == a


@given(st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
@settings(max_examples=50, deadline=None)
def test_sqrt_squares(m):
    doubled = tuple(2 * e for e in m)
    root = sqrt_monomial(doubled)
    assert sr.mono_mul(root, root) == doubled


@given(exprs())
@settings(max_examples=100, deadline=None)
def test_render_parse_round_trip(a):
    text = canonical_string(a)
    assert canonical_string(parse_expr(text, N, RANKS)) == text
