import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blockpencil.constructions import indicator_poly
from blockpencil.errors import DegreeError, FieldMismatchError, GuardExceeded, PreconditionError
from blockpencil.gf import field_for_order
from blockpencil.plane import plane_for
from blockpencil.poly import (X, Y, Z, LinearForm, Power, Product, Scalar, ScalarMul, SparsePoly, Sum,
                              all_lines_product, evaluate, evaluate_at, evaluate_plane, expand,
                              expr_from_json, expr_to_json, is_zero_at, linear_combination, monomial,
                              vanishing_form, zero_form, zero_set)


def random_expr(rng, q, depth=3):
    """Random homogeneous expression with every node type represented."""
    def linear():
        return LinearForm(*(int(c) for c in rng.integers(0, q, 3)))

    def of_degree(d):
        return Product([linear() for _ in range(d)]) if d > 1 else linear()

    if depth == 0:
        return linear()
    kind = rng.integers(0, 4)
    if kind == 0:
        return Power(random_expr(rng, q, depth - 1), int(rng.integers(1, 4)))
    if kind == 1:
        return Product([random_expr(rng, q, depth - 1) for _ in range(int(rng.integers(1, 3)))])
    if kind == 2:
        e = random_expr(rng, q, depth - 1)
        return Sum([e, ScalarMul(int(rng.integers(0, q)), of_degree(e.degree))])
    return ScalarMul(int(rng.integers(0, q)), random_expr(rng, q, depth - 1))


def all_nonzero_triples(q):
    return [v for v in itertools.product(range(q), repeat=3) if any(v)]


def test_degrees():
    assert LinearForm(1, 2, 0).degree == 1
    assert Power(X, 4).degree == 4
    assert Product([X, Power(Y, 2), Z]).degree == 4
    assert Sum([Power(X, 2), Product([Y, Z])]).degree == 2
    assert ScalarMul(3, Power(Z, 5)).degree == 5
    assert Scalar(1).degree == 0
    assert monomial(2, 0, 1).degree == 3


def test_sum_rejects_mixed_degrees():
    with pytest.raises(DegreeError):
        Sum([X, Power(Y, 2)])


def test_structural_equality_and_sharing():
    a = Power(LinearForm(1, 1, 0), 3)
    b = Power(LinearForm(1, 1, 0), 3)
    assert a == b and hash(a) == hash(b)
    assert a != Power(LinearForm(1, 1, 0), 2)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 9])
def test_z_power_q_minus_1(q):
    ctx = field_for_order(q)
    e = Power(Z, q - 1)
    assert evaluate(ctx, e, (0, 1, 1)) == 1
    assert evaluate(ctx, e, (1, 1, 0)) == 0


def test_is_zero_at_examples():
    ctx = field_for_order(5)
    assert is_zero_at(ctx, Z, (1, 0, 0))
    assert all(not is_zero_at(ctx, Scalar(1), P) for P in plane_for(ctx).points)
    assert len(zero_set(ctx, LinearForm(1, 2, 3))) == 6


def test_evaluate_rejects_foreign_coefficients():
    ctx = field_for_order(3)
    with pytest.raises(FieldMismatchError):
        evaluate(ctx, LinearForm(1, 7, 0), (1, 0, 0))
    with pytest.raises(FieldMismatchError):
        evaluate(ctx, X, (2, 0, 0))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 4, 5]), st.integers(0, 2**32 - 1))
def test_homogeneity(q, seed):
    ctx = field_for_order(q)
    rng = np.random.default_rng(seed)
    e = random_expr(rng, q)
    vs = np.array(all_nonzero_triples(q))
    base = evaluate_plane_raw(ctx, e, vs)
    for lam in range(1, q):
        scaled = np.array([[ctx.mul(lam, c) for c in v] for v in vs])
        factor = ctx.pow(lam, e.degree)
        assert list(evaluate_plane_raw(ctx, e, scaled)) == [ctx.mul(factor, int(b)) for b in base]


def evaluate_plane_raw(ctx, e, coords):
    from blockpencil.poly import evaluate_coords

    return evaluate_coords(ctx, e, coords)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_degree_multiple_of_q_minus_1_is_a_point_function(seed):
    q = 4
    ctx = field_for_order(q)
    rng = np.random.default_rng(seed)
    e = random_expr(rng, q, depth=2)
    e = Power(e, q - 1) if e.degree % (q - 1) else e
    for v in all_nonzero_triples(q):
        vals = {evaluate_at(ctx, e, [ctx.mul(lam, c) for c in v]) for lam in range(1, q)}
        assert len(vals) == 1


def test_linear_combination_endpoints_and_linearity_q3():
    ctx = field_for_order(3)
    pl = plane_for(ctx)
    F = Sum([Power(X, 2), Product([Y, Z])])
    G = Sum([ScalarMul(2, Power(Y, 2)), Product([X, Z])])
    Fv, Gv = evaluate_plane(ctx, F), evaluate_plane(ctx, G)
    assert list(evaluate_plane(ctx, linear_combination(1, 0, F, G))) == list(Fv)
    assert list(evaluate_plane(ctx, linear_combination(0, 1, F, G))) == list(Gv)
    for s, t in itertools.product(range(3), repeat=2):
        if (s, t) == (0, 0):
            continue
        got = evaluate_plane(ctx, linear_combination(s, t, F, G))
        for j in range(pl.size):
            assert got[j] == ctx.add(ctx.mul(s, int(Fv[j])), ctx.mul(t, int(Gv[j])))


def test_linear_combination_errors():
    with pytest.raises(DegreeError):
        linear_combination(1, 1, X, Power(X, 2))
    with pytest.raises(PreconditionError):
        linear_combination(0, 0, X, Y)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_all_lines_product(q):
    ctx = field_for_order(q)
    H = all_lines_product(ctx)
    assert H.degree == q * q + q + 1
    assert not evaluate_plane(ctx, H).any()


def test_expand_char2_square():
    ctx = field_for_order(2)
    sp = expand(ctx, Power(LinearForm(1, 1, 0), 2))
    assert sp.terms == {(2, 0, 0): 1, (0, 2, 0): 1}


def test_expand_char3_square():
    ctx = field_for_order(3)
    sp = expand(ctx, Power(LinearForm(1, 1, 0), 2))
    assert sp.terms == {(2, 0, 0): 1, (1, 1, 0): 2, (0, 2, 0): 1}


@pytest.mark.parametrize("q", [2, 3, 4])
def test_expand_indicator_agrees_with_dag(q):
    ctx = field_for_order(q)
    pl = plane_for(ctx)
    for Q in pl.points:
        S = indicator_poly(ctx, Q)
        sp = expand(ctx, S)
        assert sp.degree == 3 * (q - 1)
        for P in pl.points:
            assert sp.evaluate_at(ctx, P) == evaluate(ctx, S, P)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(0, 2**32 - 1))
def test_expand_consistent_with_eval(q, seed):
    ctx = field_for_order(q)
    e = random_expr(np.random.default_rng(seed), q)
    sp = expand(ctx, e)
    for v in all_nonzero_triples(q):
        assert sp.evaluate_at(ctx, v) == evaluate_at(ctx, e, v)
    assert list(evaluate_plane(ctx, sp.to_expr(ctx))) == list(evaluate_plane(ctx, e))


def test_expand_guard():
    # distinct dense lines over a large enough field keep intermediate products full
    ctx = field_for_order(31)
    dense = Product([LinearForm(1, k, k * k % 31) for k in range(1, 22)])
    assert dense.degree == 21
    with pytest.raises(GuardExceeded):
        expand(ctx, dense, term_guard=10**3)
    assert len(expand(ctx, dense)) <= 253


def test_all_lines_product_expands_small():
    # the product of all lines over GF(4) collapses to a handful of terms
    ctx = field_for_order(4)
    sp = expand(ctx, all_lines_product(ctx), term_guard=10**3)
    assert sp.degree == 21
    for P in plane_for(ctx).points:
        assert sp.evaluate_at(ctx, P) == 0


def test_vanishing_and_zero_forms():
    for q in (2, 3, 4, 5):
        ctx = field_for_order(q)
        V = vanishing_form(ctx, 3 * (q - 1))
        assert V.degree == 3 * (q - 1)
        assert not evaluate_plane(ctx, V).any()
        assert not expand(ctx, V).is_zero()
        assert expand(ctx, zero_form(4)).is_zero()


def test_sparse_json_roundtrip():
    sp = SparsePoly(2, {(2, 0, 0): 1, (0, 1, 1): 2})
    assert SparsePoly.from_json(sp.to_json()) == sp
    assert sp.to_json() == {"degree": 2, "terms": [[0, 1, 1, 2], [2, 0, 0, 1]]}


def test_sparse_rejects_inhomogeneous():
    with pytest.raises(DegreeError):
        SparsePoly(2, {(1, 0, 0): 1})


@pytest.mark.parametrize("seed", range(10))
def test_expr_json_roundtrip(seed):
    e = random_expr(np.random.default_rng(seed), 5)
    back = expr_from_json(expr_to_json(e))
    assert back == e
    assert back.degree == e.degree


def test_expr_json_ops():
    e = Sum([ScalarMul(2, Power(X, 2)), Product([Y, Z]), Product([Scalar(1), Power(Z, 2)])])
    j = expr_to_json(e)
    assert j["op"] == "add"
    assert {a["op"] for a in j["args"]} == {"smul", "mul"}
    with pytest.raises(ValueError):
        expr_from_json({"op": "div"})
