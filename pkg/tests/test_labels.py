import pytest
from hypothesis import given, strategies as st

from uqbar.cyclo import field
from uqbar.labels import (
    E, M, P, W, X, FormalDecomp, ProjPoint, canonical, label_block, label_dim, parse_label,
)

F3 = field(3)


@pytest.mark.parametrize(
    "text, want",
    [
        ("X+(2)", X(2)),
        ("X-(1)", X(1, -1)),
        ("P+(1)", P(1)),
        ("M-(2,3)", M(2, 3, -1)),
        ("W+(1,2)", W(1, 2)),
        ("E+(1,2,[1:1])", E(1, 2, ProjPoint.of(F3, 1, 1))),
        ("E-(2,1,[-1:1])", E(2, 1, ProjPoint.of(F3, 1, -1), -1)),
        ("E+(1,1,[0:1])", E(1, 1, ProjPoint.of(F3, 0, 1))),
    ],
)
def test_parse(text, want):
    assert parse_label(text, 3) == want


@pytest.mark.parametrize("text", ["X+(4)", "P+(4)", "M+(1,0)", "X+(1,2)", "E+(1,0,[1:0])", "Q+(1)", "E+(1,1,[0:0])"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_label(text, 3)


def test_canonical_aliases():
    # length-one M and W are simples, and P(p) is the Steinberg simple
    assert canonical(M(1, 1), 3) == X(2, -1)
    assert canonical(W(2, 1, -1), 3) == X(2, -1)
    assert canonical(P(3, -1), 3) == X(3, -1)


def test_projective_point_equality():
    assert ProjPoint.of(F3, 2, 4) == ProjPoint.of(F3, 1, 2)
    assert ProjPoint.of(F3, 0, 5) == ProjPoint.of(F3, 0, 1)
    assert -ProjPoint.of(F3, 1, 1) == ProjPoint.of(F3, 1, -1)
    assert ProjPoint.of(F3, 1, 3).scale(3) == ProjPoint.of(F3, 1, 1)


@pytest.mark.parametrize(
    "lab, block",
    [(X(1), 1), (X(2, -1), 1), (X(3), 3), (X(3, -1), 0), (P(2, -1), 1), (E(2, 1, ProjPoint.of(F3, 1, 0)), 2)],
)
def test_blocks(lab, block):
    assert label_block(lab, 3) == block


def small_labels(p):
    ctx = field(p)
    lam = st.sampled_from([ProjPoint.of(ctx, a, b) for a, b in [(1, 0), (0, 1), (1, 1), (1, -1)]])
    sign = st.sampled_from([1, -1])
    s = st.integers(1, p - 1)
    n = st.integers(2, 4)
    return st.one_of(
        st.builds(X, st.integers(1, p), sign),
        st.builds(P, s, sign),
        st.builds(M, s, n, sign),
        st.builds(W, s, n, sign),
        st.builds(E, s, st.integers(1, 3), lam, sign),
    )


@given(small_labels(3))
def test_label_text_round_trip(lab):
    assert parse_label(str(lab), 3) == canonical(lab, 3)


@given(st.lists(small_labels(5), max_size=6))
def test_formal_decomp_dict_round_trip(labs):
    fd = FormalDecomp.of(5, labs)
    again = FormalDecomp.from_dict(fd.to_dict())
    assert again == fd
    assert fd.dim() == sum(label_dim(l, 5) for l in labs)
    assert len(fd) == len(labs)


def test_formal_decomp_diff():
    a = FormalDecomp.of(3, [X(1), X(1), P(2)])
    b = FormalDecomp.of(3, [X(1), P(2), P(2)])
    assert a.diff(b) == {"X+(1)": (2, 1), "P+(2)": (1, 2)}
    assert str(a) == "X+(1)^2 ⊕ P+(2)"
