"""Jet arithmetic: frozen expansions, independent oracles, algebraic laws."""

import itertools
import math

import numpy as np
import pytest

from parageom import (
    DegenerateJet,
    Jet3,
    OrderExceeded,
    analytic,
    arith,
    extract_partial,
    jet_space,
    seed_variable,
)
from parageom.errors import ShapeError
from parageom.jets import sqrt


def random_jet(rng, num_vars, scale=1.0, min_const=None):
    space = jet_space(num_vars)
    coeffs = rng.uniform(-scale, scale, size=space.ncoeff)
    if min_const is not None:
        coeffs[0] = rng.uniform(min_const, min_const + 2.0) * rng.choice([-1.0, 1.0])
    return Jet3(space, coeffs)


# ----------------------------------------------------------------------
# seeding and extraction


def test_seed_variable_univariate():
    j = seed_variable(0, 2.0, 1)
    assert j.coefficient((0,)) == 2.0
    assert j.coefficient((1,)) == 1.0
    assert j.coefficient((2,)) == 0.0
    assert j.coefficient((3,)) == 0.0


def test_seed_variable_trivariate():
    j = seed_variable(1, 0.0, 3)
    assert j.value == 0.0
    assert extract_partial(j, (0, 1, 0)) == 1.0
    assert extract_partial(j, (1, 0, 0)) == 0.0
    assert extract_partial(j, (0, 0, 1)) == 0.0


def test_linear_function_has_zero_second_derivative():
    j = seed_variable(0, 5.0, 2)
    assert extract_partial(j, (2, 0)) == 0.0


def test_seed_variable_index_out_of_range():
    with pytest.raises(IndexError):
        seed_variable(3, 0.0, 3)
    with pytest.raises(IndexError):
        seed_variable(-1, 0.0, 2)


def test_extract_partial_order_exceeded():
    j = seed_variable(0, 1.0, 2)
    with pytest.raises(OrderExceeded):
        extract_partial(j, (2, 2))


def test_extract_partial_length_mismatch():
    j = seed_variable(0, 1.0, 2)
    with pytest.raises(ShapeError):
        extract_partial(j, (1,))


# ----------------------------------------------------------------------
# arithmetic: frozen small cases


def test_square_of_coordinate():
    u = seed_variable(0, 3.0, 1)
    sq = arith(u, u, "mul")
    assert sq.coefficient((0,)) == pytest.approx(9.0)
    assert sq.coefficient((1,)) == pytest.approx(6.0)
    assert sq.coefficient((2,)) == pytest.approx(1.0)
    assert sq.coefficient((3,)) == 0.0


def test_geometric_series_inverse():
    # 1/(1+u) around u=0 has alternating coefficients 1, -1, 1, -1.
    u = seed_variable(0, 0.0, 1)
    one = Jet3.constant(1.0, 1)
    inv = arith(one, one + u, "div")
    np.testing.assert_allclose(inv.coeffs, [1.0, -1.0, 1.0, -1.0], atol=1e-15)


def test_add_sub_group_identity():
    rng = np.random.default_rng(7)
    for _ in range(20):
        a = random_jet(rng, 3)
        b = random_jet(rng, 3)
        back = arith(a, arith(b, b, "sub"), "add")
        np.testing.assert_array_equal(back.coeffs, a.coeffs)


def test_mixed_partial_of_product():
    u = seed_variable(0, 1.5, 2)
    v = seed_variable(1, -0.5, 2)
    assert extract_partial(u * v, (1, 1)) == pytest.approx(1.0)


# ----------------------------------------------------------------------
# analytic functions: frozen series


def test_sqrt_binomial_series():
    # sqrt(1+u) = 1 + u/2 - u^2/8 + u^3/16 + ...
    u = seed_variable(0, 0.0, 1)
    s = analytic(1.0 + u, "sqrt")
    np.testing.assert_allclose(s.coeffs, [1.0, 0.5, -0.125, 0.0625], atol=1e-15)


def test_cosh_series_at_zero():
    t = seed_variable(0, 0.0, 1)
    c = analytic(t, "cosh")
    np.testing.assert_allclose(c.coeffs, [1.0, 0.0, 0.5, 0.0], atol=1e-15)


def test_sqrt_of_constant():
    s = sqrt(Jet3.constant(4.0, 2))
    assert s.value == pytest.approx(2.0)
    assert np.all(s.coeffs[1:] == 0.0)


def test_sqrt_rejects_nonpositive():
    with pytest.raises(DegenerateJet):
        sqrt(Jet3.constant(-1.0, 1))
    with pytest.raises(DegenerateJet):
        sqrt(Jet3.constant(0.0, 1))


def test_division_by_zero_constant_term():
    u = seed_variable(0, 0.0, 1)
    with pytest.raises(DegenerateJet):
        arith(Jet3.constant(1.0, 1), u, "div")


def test_unknown_op_names():
    a = Jet3.constant(1.0, 1)
    with pytest.raises(ValueError):
        arith(a, a, "pow")
    with pytest.raises(ValueError):
        analytic(a, "tanh")


# ----------------------------------------------------------------------
# finite-difference oracles

_STENCILS = {
    # order: (offsets, weights, h); all O(h^4) truncation error.  Steps are
    # tuned per order against float64 roundoff (eps/h^order) growth.
    1: ((-2, -1, 1, 2), (1 / 12, -8 / 12, 8 / 12, -1 / 12), 1e-3),
    2: ((-2, -1, 0, 1, 2), (-1 / 12, 16 / 12, -30 / 12, 16 / 12, -1 / 12), 1e-2),
    3: ((-3, -2, -1, 1, 2, 3), (1 / 8, -1, 13 / 8, -13 / 8, 1, -1 / 8), 5e-3),
}


def fd_derivative(f, x, order):
    offsets, weights, h = _STENCILS[order]
    return sum(w * f(x + k * h) for k, w in zip(offsets, weights)) / h**order


def jet_univariate_derivatives(fn_name, x):
    t = seed_variable(0, x, 1)
    j = analytic(t, fn_name)
    return [extract_partial(j, (k,)) for k in (1, 2, 3)]


def test_cosh_second_derivative_vs_plain_central_difference():
    # Frozen oracle from the 3-point stencil at t=0.3, step 1e-4.
    t0, h = 0.3, 1e-4
    fd = (math.cosh(t0 + h) - 2 * math.cosh(t0) + math.cosh(t0 - h)) / h**2
    jet = extract_partial(analytic(seed_variable(0, t0, 1), "cosh"), (2,))
    assert abs(jet - fd) / abs(fd) < 1e-6


@pytest.mark.parametrize("fn_name", ["sqrt", "cosh", "sinh", "exp"])
def test_analytic_derivatives_match_finite_differences(fn_name):
    rng = np.random.default_rng(42)
    scalar = {
        "sqrt": math.sqrt,
        "cosh": math.cosh,
        "sinh": math.sinh,
        "exp": math.exp,
    }[fn_name]
    for _ in range(25):
        # sqrt base points stay >= 1: closer to 0 the stencil's own
        # truncation error exceeds the comparison tolerance.
        x = rng.uniform(1.0, 3.0) if fn_name == "sqrt" else rng.uniform(-1.5, 1.5)
        derivs = jet_univariate_derivatives(fn_name, x)
        for order in (1, 2, 3):
            fd = fd_derivative(scalar, x, order)
            assert abs(derivs[order - 1] - fd) <= 1e-6 * max(1.0, abs(fd))


# ----------------------------------------------------------------------
# algebraic properties on random jets


def multi_indices(num_vars, max_order=3):
    out = []
    for alpha in itertools.product(range(max_order + 1), repeat=num_vars):
        if 0 < sum(alpha) <= max_order:
            out.append(alpha)
    return out


def leibniz_expansion(a, b, alpha):
    """Independent Leibniz-rule evaluation of d^alpha(a*b)."""
    total = 0.0
    ranges = [range(k + 1) for k in alpha]
    for beta in itertools.product(*ranges):
        gamma = tuple(k - j for k, j in zip(alpha, beta))
        binom = 1.0
        for k, j in zip(alpha, beta):
            binom *= math.comb(k, j)
        total += binom * extract_partial(a, beta) * extract_partial(b, gamma)
    return total


def test_leibniz_rule_random_jets():
    rng = np.random.default_rng(3)
    for num_vars in (1, 2, 3):
        for _ in range(10):
            a = random_jet(rng, num_vars)
            b = random_jet(rng, num_vars)
            prod = a * b
            for alpha in multi_indices(num_vars):
                want = leibniz_expansion(a, b, alpha)
                got = extract_partial(prod, alpha)
                assert abs(got - want) <= 1e-12 * max(1.0, abs(want))


def test_division_inverts_multiplication():
    rng = np.random.default_rng(11)
    for num_vars in (1, 2, 4):
        for _ in range(10):
            a = random_jet(rng, num_vars)
            b = random_jet(rng, num_vars, min_const=0.5)
            back = (a * b) / b
            np.testing.assert_allclose(back.coeffs, a.coeffs, rtol=0, atol=1e-12)


def test_scalar_operator_mixing():
    u = seed_variable(0, 2.0, 1)
    j = 2.0 * u - 1.0 + u / 2.0
    assert j.value == pytest.approx(4.0)
    assert extract_partial(j, (1,)) == pytest.approx(2.5)
    r = 1.0 / (1.0 + u)
    assert r.value == pytest.approx(1.0 / 3.0)


def test_deriv_kernel_shifts_orders():
    # d/du of u^3 at u=2 is 3u^2: value 12, slope 12, curvature 6.
    space = jet_space(1)
    u = space.seed(0, 2.0)
    cube = space.mul(space.mul(u, u), u)
    d = space.deriv(cube, 0)
    assert d[0] == pytest.approx(12.0)
    assert space.partial(d, (1,)) == pytest.approx(12.0)
    assert space.partial(d, (2,)) == pytest.approx(6.0)
