import pytest

from rootlie.labels import (IsoLabel, LabelError, indecomposable_labels, is_irreducible, label_of, parse_iso,
                            parse_object, realize, tube_points)
from rootlie.rep import direct_sum, is_isomorphic, is_indecomposable


def test_round_trip_strings(a2, kron):
    for text in ["S(1,0)", "S(1,1)", "S(0,1)+2*S(1,0)", "0", "R(z=inf,l=2,i=0)", "R(z=p1_1_1,l=2,i=0)"]:
        assert str(parse_iso(text)) == text
    assert parse_iso("2*S(1,0)+S(0,1)") == parse_iso("S(0,1)+2*S(1,0)")
    assert str(parse_object("S(1,0)[1]")) == "S(1,0)[1]"
    assert parse_object("S(1,0)[1]").shift == 1


def test_prefix_letters_accepted():
    assert parse_iso("P(1,1)") == parse_iso("S(1,1)")


def test_bad_label():
    with pytest.raises(LabelError):
        parse_iso("S(1,")


@pytest.mark.parametrize("p", [2, 3])
def test_realize_then_label(a3, p):
    for lab in indecomposable_labels(a3):
        x = realize(a3, IsoLabel.of(lab), p)
        assert is_indecomposable(x)
        assert label_of(x) == IsoLabel.of(lab)


@pytest.mark.parametrize("p", [2, 3])
def test_kronecker_tubes(kron, p):
    for z in [str(c) for c in range(p)] + ["inf"]:
        for l in (1, 2):
            text = f"R(z={z},l={l},i=0)"
            x = realize(kron, parse_iso(text), p)
            assert x.dim == (l, l) and is_indecomposable(x)
            assert str(label_of(x)) == text


def test_degree_two_tube_point(kron):
    # x^2 + x + 1 is the irreducible quadratic over F_2; l counts dimension
    assert is_irreducible([1, 1, 1], 2)
    assert tube_points(2, 2) == ["p1_1_1"]
    x = realize(kron, parse_iso("R(z=p1_1_1,l=2,i=0)"), 2)
    assert x.dim == (2, 2) and is_indecomposable(x)


def test_labels_separate_iso_classes(a2):
    a = realize(a2, parse_iso("S(1,1)+S(1,0)"), 2)
    b = direct_sum(realize(a2, parse_iso("S(1,0)"), 2), realize(a2, parse_iso("S(1,1)"), 2))
    assert is_isomorphic(a, b) and label_of(a) == label_of(b)
    c = realize(a2, parse_iso("2*S(1,0)+S(0,1)"), 2)
    assert label_of(a) != label_of(c)
