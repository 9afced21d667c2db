import pytest
import sympy as sp

from trigonal.schedule import schedule_for
from trigonal.transvectants import bi_transvect
from trigonal.verifier import verify_witness_set
from trigonal.witnesses import MUTATIONS, tamper, witnesses_b3_variant, witnesses_for

from oracles import X, Y, biform_expr, x, y


def expr(P):
    return sp.expand(biform_expr(P))


def test_b5_formulas():
    ws = witnesses_for(5)
    assert ws.family == "B5n"
    assert expr(ws.v) == sp.expand(5 * X * Y ** 4 * x ** 3 + 30 * X ** 2 * Y ** 3 * x ** 2 * y
                                   + 30 * X ** 3 * Y ** 2 * x * y ** 2 + 5 * X ** 4 * Y * y ** 3)
    assert [expr(w) for w in ws.ws] == [
        sp.expand(Y * x ** 3 - X * x ** 2 * y),
        sp.expand(Y * x ** 2 * y - X * x * y ** 2),
        sp.expand(Y * x * y ** 2 - X * y ** 3),
    ]


def test_b7_formulas():
    ws = witnesses_for(7)
    assert expr(ws.v) == sp.expand(35 * X ** 3 * Y ** 4 * x ** 3 - 9 * Y ** 7 * x ** 2 * y
                                   + 7 * X ** 6 * Y * x * y ** 2 + 35 * X ** 4 * Y ** 3 * y ** 3)
    (w,) = ws.ws
    assert expr(w) == sp.expand(Y ** 3 * x ** 3 + X ** 3 * x * y ** 2 + (X * Y ** 2 + Y ** 3) * y ** 3)


def test_b9_formula():
    (w,) = witnesses_for(9).ws
    assert expr(w) == sp.expand((X ** 7 + Y ** 7) * x + (X ** 5 * Y ** 2 + X ** 2 * Y ** 5) * y)


@pytest.mark.parametrize("b", range(5, 102, 2))
def test_witness_shape_and_vanishing(b):
    ws = witnesses_for(b)
    s = schedule_for(b)
    assert ws.family == s.family
    assert ws.v.bidegree == (3, b) and not ws.v.is_zero()
    assert len(ws.ws) == s.c
    for w in ws.ws:
        assert w.bidegree == s.src2 and not w.is_zero()
        assert bi_transvect(ws.v, w, s.spec).is_zero()


def test_b5n3_variant_dispatch():
    assert witnesses_for(13).variant == "n!=4"
    assert witnesses_for(23).variant == "n==4"
    assert witnesses_for(73).variant == "n==4"
    assert witnesses_for(43).variant == "n!=4"
    assert witnesses_for(11).variant is None


def test_b5n3_variants_share_ws():
    for n in (4, 6, 8, 10, 14):
        a, b = witnesses_b3_variant(n, "n!=4"), witnesses_b3_variant(n, "n==4")
        assert a.ws == b.ws
        assert a.v.bidegree == b.v.bidegree


def test_b5n3_variant_verdicts():
    # The generic construction loses surjectivity exactly when n = 4 mod 5,
    # which is what the second construction is for.
    verdicts = {}
    for n in (2, 4, 6, 8, 10, 14):
        for variant in ("n!=4", "n==4"):
            if variant == "n==4" and n < 4:
                continue
            verdicts[n, variant] = verify_witness_set(witnesses_b3_variant(n, variant)).failed
    assert verdicts == {
        (2, "n!=4"): set(),
        (4, "n!=4"): {"iii"}, (4, "n==4"): set(),
        (6, "n!=4"): set(), (6, "n==4"): {"iii"},
        (8, "n!=4"): set(), (8, "n==4"): {"iii"},
        (10, "n!=4"): set(), (10, "n==4"): set(),
        (14, "n!=4"): {"iii"}, (14, "n==4"): set(),
    }


def test_b5n3_variant_argument_checks():
    with pytest.raises(ValueError):
        witnesses_b3_variant(3, "n!=4")
    with pytest.raises(ValueError):
        witnesses_b3_variant(2, "n==4")
    with pytest.raises(KeyError):
        witnesses_b3_variant(4, "other")


def test_tamper_mutations():
    ws = witnesses_for(5)
    z = tamper(ws, "zero_w")
    assert z.ws[0].is_zero() and z.ws[1:] == ws.ws[1:] and z.mutation == "zero_w"
    d = tamper(ws, "duplicate_w")
    assert d.ws[1] == d.ws[0] == ws.ws[0] and len(d.ws) == 3
    p = tamper(ws, "perturb_v")
    diff = p.v - ws.v
    assert len(list(diff.terms())) == 1
    assert not bi_transvect(p.v, ws.ws[0], schedule_for(5).spec).is_zero()
    with pytest.raises(ValueError):
        tamper(ws, "nope")
    assert set(MUTATIONS) == {"zero_w", "duplicate_w", "perturb_v"}


def test_duplicate_on_single_witness_appends():
    d = tamper(witnesses_for(7), "duplicate_w")
    assert len(d.ws) == 2 and d.ws[0] == d.ws[1]
