import itertools

import pytest

from uqbar.cyclo import field
from uqbar.doublecover import (
    NotLiftable,
    braiding_check,
    build_T,
    flip,
    jordan_matrix_Q,
    jordan_split_check,
    lift,
    restrict_to_U,
    rmatrix_on,
)
from uqbar.homlib import decompose, is_iso
from uqbar.labels import E, M, P, W, X, FormalDecomp, ProjPoint
from uqbar.linalg import Mat
from uqbar.repcore import build, direct_sum, tensor, validate

F3 = field(3)


@pytest.mark.parametrize(
    "s, alpha, n, kappa",
    list(itertools.product((1, 2), ("1", "-1", "i", "-i"), (1, 2), [(1, 1), (2, 2), (1, 2), (-1, 3)])),
)
def test_t_modules_are_valid(s, alpha, n, kappa):
    T = build_T(3, s, alpha, kappa, n)
    assert T.dim == 2 * 3 * n
    assert validate(T) is None
    assert validate(restrict_to_U(T)) is None


@pytest.mark.parametrize("alpha", ["1", "i"])
def test_t_spectrum_on_e_basis(alpha):
    s, p = 2, 3
    T = build_T(p, s, alpha, (1, 1), 1)
    a = {"1": F3.one, "i": F3.i}[alpha]
    for u in range(p):
        assert T["t"].get(u, u) == a * F3.zeta_power(s - 1 - 2 * u)


def test_e_couples_layers():
    p, n = 3, 2
    T = build_T(p, 1, "1", (1, 1), n)
    # e on e_0(2) reaches hat-e_(p-1)(1)
    assert T["e"].get(n * p + (p - 1), p) == F3.one


def test_restriction_example():
    R = restrict_to_U(build_T(3, 1, "1", (1, 1), 2))
    want = direct_sum([build(3, E(1, 2, ProjPoint.of(F3, 1, b))) for b in (1, -1)])
    assert is_iso(R, want)


@pytest.mark.parametrize("beta", [1, -1, 2])
def test_jordan_matrix_small_case(beta):
    Q = jordan_matrix_Q(3, (beta, beta), 1, beta)
    assert Q.shape == (2, 2)
    assert Q.rank() == 2


def test_wrong_beta_is_rejected():
    with pytest.raises(ValueError):
        jordan_split_check(3, 1, "1", (1, 1), 1, 2)


@pytest.mark.parametrize("s, n, k", list(itertools.product((1, 2), (1, 2), (1, 2))))
def test_split_check_passes(s, n, k):
    assert jordan_split_check(3, s, "1", (k, k), n, k)
    got = decompose(restrict_to_U(build_T(3, s, "1", (k, k), n)))
    assert got == FormalDecomp.of(3, [E(s, n, ProjPoint.of(F3, 1, k)), E(s, n, ProjPoint.of(F3, 1, -k))])


def test_braiding_on_trivial_lifts():
    one = lift(build(3, X(1))).module
    assert braiding_check(one, one)
    assert rmatrix_on(one, one) == Mat.identity(F3, 1)


def test_braiding_swaps_t_summands():
    T = build_T(3, 1, "1", (1, 1), 1)
    X2 = lift(build(3, X(2))).module
    assert braiding_check(T, X2)
    assert braiding_check(X2, T)


def test_plain_flip_is_not_a_braiding():
    A = build_T(3, 1, "1", (1, 1), 1)
    B = lift(build(3, X(2))).module
    S = flip(F3, A.dim, B.dim)
    AB, BA = tensor(A, B), tensor(B, A)
    assert any(S @ AB[g] != BA[g] @ S for g in ("e", "f"))


@pytest.mark.parametrize(
    "lab",
    [X(1), X(3, -1), P(1), P(2, -1), M(1, 2), W(2, 3, -1)]
    + [E(s, n, ProjPoint.of(F3, a, b), g) for s in (1, 2) for n in (1, 2) for a, b in [(1, 0), (0, 1)] for g in (1, -1)],
    ids=str,
)
def test_liftable_modules(lab):
    res = lift(build(3, lab))
    assert res.liftable is True
    U = restrict_to_U(res.module)
    Z = build(3, lab)
    assert U.E == Z.E and U.F == Z.F and U.K == Z.K


@pytest.mark.parametrize("b", [1, -1, 2])
def test_generic_e_is_not_liftable(b):
    Z = build(3, E(1, 1, ProjPoint.of(F3, 1, b)))
    res = lift(Z)
    assert res.liftable is False
    assert res.obstruction
    with pytest.raises(NotLiftable) as info:
        lift(Z, require=True)
    assert info.value.certificate.liftable is False


def test_lift_of_tensor_product():
    A, B = build(3, X(2)), build(3, P(1))
    res = lift(tensor(A, B))
    assert res.liftable is True
    assert validate(res.module) is None
