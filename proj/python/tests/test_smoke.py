import math

import pytest

import gfw


def test_field_description():
    k = gfw.Field("nf:x^2+1")
    assert k.degree == 2
    assert k.s_counts == (0, 2)
    assert k.discriminant == -4
    assert gfw.Field("ff:3:y^2=t^3-t").genus == 1


def test_parse_errors():
    with pytest.raises(ValueError):
        gfw.Field("nf:x^2-x")
    with pytest.raises(ValueError):
        gfw.Divisor(gfw.Field("nf:x"), "1*(4)")


def test_h0_counts():
    k = gfw.Field("nf:x^2+1")
    assert gfw.h0(gfw.Divisor(k, "log(2)*inf1"))["h0"] == 13
    res = gfw.h0(gfw.Divisor(k), elements=True)
    assert sorted(res["elements"]) == ["-1", "-x", "0", "1", "x"]
    assert gfw.h0(gfw.Divisor(gfw.Field("ff:3"), "2*inf"))["h0"] == 27
    d = gfw.Divisor(gfw.Field("nf:x"), "2*inf")
    assert gfw.h0(d)["h0"] == gfw.h0_oracle(d) == 15


def test_divisor_round_trip():
    k = gfw.Field("nf:x^2-2")
    d = gfw.Divisor(k, "1*(2)+1/2*inf1-log(3)*inf2")
    assert str(gfw.Divisor(k, str(d))) == str(d)
    mid, rad = (d - d).degree()
    assert mid == 1 and rad == 0


def test_canonical_degree():
    w = gfw.canonical_divisor(gfw.Field("nf:x^2+5"), p0="(3)")
    mid, rad = w.degree()
    assert abs(mid - 5) < 1e-12 and rad < 1e-20
    assert gfw.canonical_divisor(gfw.Field("ff:5")).degree_exact() == "5^(-2)"


def test_constants():
    c = gfw.constants(0, 2)
    assert not c["C_equal"]
    assert abs(c["C_theorem"][1] - 288 / math.pi**2) < 1e-9
    assert abs(c["C_remark"][1] - 144 / math.pi) < 1e-9
    assert gfw.constants(3, 0)["C_equal"]


def test_verifications():
    q = gfw.Field("nf:x")
    r = gfw.verify_rr1(gfw.Divisor(q))
    assert r["verdict"] == "Holds" and r["ratio"] == (1.0, 0.0)
    p = gfw.verify_rr2(gfw.Divisor(q, "3*inf"), eps="1/20")
    assert p["verdict"] == "Holds"
    assert abs(p["i"][0] - 41 / (2 * math.exp(3))) < 1e-12
    rh = gfw.verify_rh(gfw.Field("ff:3:y^2=t^3-t"), gfw.Field("ff:3"))
    assert rh["verdict"] == "Holds" and rh["margin"] == (0.0, 0.0)
