import json
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from uqbar.cyclo import field, qint
from uqbar.homlib import decompose, identify, is_iso
from uqbar.labels import E, M, P, W, X, FormalDecomp, ProjPoint, canonical, label_dim
from uqbar.linalg import Mat
from uqbar.repcore import (
    RepError,
    block_decompose,
    build,
    build_E_direct,
    build_simple,
    direct_sum,
    dual,
    rep_from_dict,
    rep_to_dict,
    tensor,
    validate,
)
from uqbar.rules import label_sample

F3 = field(3)
SAMPLE3 = label_sample(3, 2)


def test_simple_weights_and_f_chain():
    Z = build_simple(3, 3, 1)
    q = F3.q
    assert Z.K == Mat.diag(F3, [q ** 2, F3.one, q ** -2])
    assert Z.F.get(1, 0) == F3.one and Z.F.get(2, 1) == F3.one


@pytest.mark.parametrize("p", [2, 3, 5])
def test_simple_e_entries(p):
    ctx = field(p)
    for s in range(1, p + 1):
        for sign in (1, -1):
            Z = build_simple(p, s, sign)
            for n in range(1, s):
                assert Z.E.get(n - 1, n) == qint(ctx, n) * qint(ctx, s - n) * sign


@pytest.mark.parametrize("lab", SAMPLE3, ids=str)
def test_sample_modules_are_valid(lab):
    Z = build(3, lab)
    assert validate(Z) is None
    assert Z.dim == label_dim(lab, 3)


def test_broken_relation_is_reported():
    Z = build(3, X(2))
    bad = replace(Z, action=dict(Z.action, F=Z.F.scale(F3(2))))
    assert validate(bad) == "EF-FE=(K-K^-1)/(q-q^-1)"
    bad = replace(Z, action=dict(Z.action, K=Z.K.scale(F3.q), Ki=Z.Ki.scale(F3.qinv)))
    assert validate(bad) == "EF-FE=(K-K^-1)/(q-q^-1)"


@pytest.mark.parametrize(
    "lab",
    [M(1, 2, -1), M(2, 3, -1), W(1, 3, -1), W(2, 2, -1)]
    + [E(s, n, ProjPoint.of(F3, a, b), -1) for s in (1, 2) for n in (1, 2) for a, b in [(1, 0), (0, 1), (1, 1), (1, 2)]],
    ids=str,
)
def test_twisted_and_direct_constructions_agree(lab):
    twisted = build(3, lab)
    direct = build(3, lab, construction="direct")
    assert validate(direct) is None
    assert is_iso(twisted, direct)


def test_e_direct_rejects_bad_n():
    with pytest.raises(RepError):
        build_E_direct(3, 1, 1, 0, ProjPoint.of(F3, 1, 0))


@pytest.mark.parametrize("a, b, c", [(X(2), E(1, 1, ProjPoint.of(F3, 1, 1)), M(2, 2)), (P(1), X(2, -1), W(1, 2))], ids=str)
def test_tensor_is_associative_on_the_nose(a, b, c):
    A, B, C = (build(3, l) for l in (a, b, c))
    left, right = tensor(tensor(A, B), C), tensor(A, tensor(B, C))
    for g in ("E", "F", "K"):
        assert left[g] == right[g]


@pytest.mark.parametrize("lab", SAMPLE3[::3], ids=str)
def test_unit_object(lab):
    Z = build(3, lab)
    one = build(3, X(1))
    for prod in (tensor(one, Z), tensor(Z, one)):
        assert prod.E == Z.E and prod.F == Z.F and prod.K == Z.K


@pytest.mark.parametrize("lab", SAMPLE3, ids=str)
def test_left_and_right_duals_are_inverse(lab):
    Z = build(3, lab)
    assert identify(dual(dual(Z, "L"), "R")) == canonical(lab, 3)
    assert identify(dual(dual(Z, "R"), "L")) == canonical(lab, 3)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SAMPLE3), st.sampled_from(SAMPLE3))
def test_tensor_products_are_valid(a, b):
    Z = tensor(build(3, a), build(3, b))
    assert validate(Z) is None
    assert Z.dim == label_dim(a, 3) * label_dim(b, 3)
    pieces = block_decompose(Z)
    assert sum(piece.dim for _, piece in pieces) == Z.dim


@pytest.mark.parametrize("labs", [[X(1), X(2)], [P(2, -1), E(1, 2, ProjPoint.of(F3, 0, 1))]], ids=str)
def test_direct_sum_decomposes_into_its_parts(labs):
    Z = direct_sum([build(3, l) for l in labs])
    assert decompose(Z) == FormalDecomp.of(3, labs)


def test_serialization_round_trip():
    Z = build(3, E(2, 2, ProjPoint.of(F3, 1, -1)))
    data = json.loads(json.dumps(rep_to_dict(Z)))
    again = rep_from_dict(data)
    assert again.E == Z.E and again.F == Z.F and again.K == Z.K
    assert data["label"] == "E+(2,2,[1:-1])"


@pytest.mark.parametrize("p", [2, 3])
def test_tensor_of_different_p_is_rejected(p):
    with pytest.raises(RepError):
        tensor(build(p, X(1)), build(p + 1, X(1)))
