import warnings

import pytest
from hypothesis import given, strategies as st

from ellsos import ModelParameters, regularity, replace
from ellsos.golden import parameter_set
from ellsos.params import RegularityWarning, require_regular
from ellsos.errors import DivisionByZeroTheta


def set1(L=2, **changes):
    return parameter_set(1, L).evolve(**changes)


def names(params, tol=1e-10):
    return {v.name for v in regularity(params, tol)}


def test_replace_examples():
    a, b, c, z = 1.0, 2.0, 3.0, 9.0 + 1j
    assert replace((a, b, c), 2, z) == (a, z, c)
    X = (a, b, c)
    assert replace(X, 3, c) == X
    assert replace(replace(X, 1, z), 1, a) == X
    assert X == (a, b, c)


@pytest.mark.parametrize("i", [0, 4, -1])
def test_replace_out_of_range(i):
    with pytest.raises(IndexError):
        replace((1, 2, 3), i, 0)


@given(
    values=st.lists(st.complex_numbers(allow_nan=False, allow_infinity=False), min_size=1, max_size=6),
    data=st.data(),
)
def test_replace_restore_is_identity(values, data):
    i = data.draw(st.integers(1, len(values)))
    z = data.draw(st.complex_numbers(allow_nan=False, allow_infinity=False))
    X = tuple(complex(v) for v in values)
    assert replace(replace(X, i, z), i, X[i - 1]) == X


@pytest.mark.parametrize("sid", [1, 2])
@pytest.mark.parametrize("L", [1, 2, 3, 4, 5])
def test_table_sets_are_regular(sid, L):
    assert regularity(parameter_set(sid, L)) == []


def test_equal_spectral_parameters_flagged():
    prm = set1(2, x=(0.5, 0.5))
    assert "[x_i - x_j] = 0" in names(prm)


def test_tau_minus_gamma_flagged():
    prm = set1(2)
    assert "[tau + gamma] = 0" in names(prm.with_tau(-prm.gamma))


def test_tau_zero_and_gamma_multiples_flagged():
    prm = set1(3)
    assert "[tau] = 0" in names(prm.with_tau(0))
    assert "[tau + 3gamma] = 0" in names(prm.with_tau(-3 * prm.gamma))
    assert "[2gamma] = 0" in names(prm.evolve(gamma=1j * 3.141592653589793 / 2))


def test_mu_conditions_flagged():
    prm = set1(2)
    g = prm.gamma
    assert "[x_k - mu_1 + gamma] = 0" in names(prm.with_x(2, prm.mu[0] - g))
    assert "[x_k - mu_1 + 2gamma] = 0" in names(prm.with_x(2, prm.mu[0] - 2 * g))
    assert "[mu_1 - mu_k - gamma] = 0" in names(prm.evolve(mu=(prm.mu[0], prm.mu[0] - g)))
    assert "[x_l - mu_k + gamma] = 0" in names(prm.with_x(1, prm.mu[1] - g))


@pytest.mark.parametrize("eps", [1e-13, 1e-9, 1e-6, 1e-3])
def test_regularity_monotone_in_tol(eps):
    prm = set1(3, x=(0.5, 0.5 + eps, 1.7481))
    tols = [1e-12, 1e-10, 1e-8, 1e-6, 1e-4, 1e-2]
    found = [set(map(str, regularity(prm, t))) for t in tols]
    for small, large in zip(found, found[1:]):
        assert small <= large


def test_regularity_rejects_nonpositive_tol():
    with pytest.raises(ValueError):
        regularity(set1(), 0)


def test_construction_warns_on_irregular_input():
    with pytest.warns(RegularityWarning):
        ModelParameters(L=2, p=0.3, gamma=0.5, tau=0.2, x=[0.1, 0.1], mu=[1.0, 2.0])
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        ModelParameters(L=2, p=0.3, gamma=0.5, tau=0.2, x=[0.1, 0.2], mu=[1.0, 2.0])


def test_require_regular_raises():
    with pytest.raises(DivisionByZeroTheta):
        require_regular(set1(2, x=(0.5, 0.5)))


def test_length_and_L_validation():
    with pytest.raises(ValueError):
        ModelParameters(L=2, p=0.3, gamma=0.5, tau=0.2, x=[0.1], mu=[1.0, 2.0])
    with pytest.raises(ValueError):
        ModelParameters(L=0, p=0.3, gamma=0.5, tau=0.2, x=[], mu=[])
    with pytest.raises(ValueError, match="nome out of range"):
        ModelParameters(L=1, p=1.5, gamma=0.5, tau=0.2, x=[0.1], mu=[1.0])


def test_values_coerced_to_complex():
    prm = set1(2)
    assert all(isinstance(v, complex) for v in (*prm.x, *prm.mu, prm.gamma, prm.tau))


def test_restrict_and_with_x():
    prm = parameter_set(2, 5)
    r = prm.restrict(3)
    assert r.L == 3 and r.x == prm.x[:3] and r.mu == prm.mu[:3]
    assert prm.with_x(2, 7.0).x == replace(prm.x, 2, 7.0)
    assert prm.with_tau(1.0).tau == 1.0 and prm.tau == 0.2759
    with pytest.raises(ValueError):
        prm.restrict(6)
