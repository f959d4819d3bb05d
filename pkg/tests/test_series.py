from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from siegel_signs.errors import NotInSpan, PrecisionTooLow, TruncationInsufficient, ZeroLeadingTerm
from siegel_signs.series import (
    QExpansion,
    bernoulli,
    cusp_decompose,
    delta,
    dim_cusp,
    eisenstein,
    eta,
    first_sign_change,
    miller_basis,
)

from oracles import dim_cusp_by_monomials, euler_product, sigma, tau

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=7)


@st.composite
def series(draw, denom=None, invertible=False):
    d = denom or draw(st.sampled_from([1, 2, 3, 24]))
    prec = draw(st.integers(4, 14))
    coeffs = draw(st.dictionaries(st.integers(0, prec - 1), rationals, max_size=8))
    if invertible:
        coeffs[0] = draw(rationals.filter(bool))
    return QExpansion(coeffs, prec, d)


def test_geometric_series():
    geo = QExpansion.from_list([1] * 12)
    assert (QExpansion.from_list([1, -1], prec=12) * geo) == QExpansion.one(12)


@given(series())
def test_additive_inverse(f):
    assert (f + (-f)).is_zero()
    assert (f - f).is_zero()


def test_delta_from_product_oracle():
    t = tau(12)
    d = delta(12)
    assert [d[n] for n in range(1, 12)] == t[1:12]
    assert d[2] == -24 and d[3] == 252


def test_delta_by_repeated_mul():
    p = QExpansion.from_list(euler_product(6, 1))
    d = (p ** 24).shift(1)
    assert d[2] == -24 and d.agrees_with(delta(7))


def test_invert_examples():
    assert QExpansion.from_list([1, -1], prec=8).invert() == QExpansion.from_list([1] * 8)
    mono = QExpansion.monomial(1, 24 * 5, denom=24)
    inv = mono.invert()
    assert inv.valuation() == -1 and inv[-1] == 1 and inv.denom == 24


def test_invert_eta6():
    e6 = eta(4) ** 6
    inv = e6.invert()
    assert Fraction(inv.valuation(), inv.denom) == Fraction(-1, 4)
    shifted = inv.shift(6).reduced()
    assert shifted.denom == 1
    assert all(isinstance(c, int) for _, c in shifted.items())
    # prod(1-q^n)^(-6) to order 3 computed independently
    assert shifted.list(0, 3) == [1, 6, 27]


def test_invert_zero_raises():
    with pytest.raises(ZeroLeadingTerm):
        QExpansion({}, 5).invert()


def test_eta_coefficients():
    e = eta(10)
    assert e.coefficient(Fraction(1, 24)) == 1
    assert e.coefficient(Fraction(25, 24)) == -1
    assert e.coefficient(Fraction(49, 24)) == -1
    assert e.coefficient(Fraction(73, 24)) == 0


def test_eta24_is_delta():
    assert (eta(20) ** 24).agrees_with(delta(20))


def test_eisenstein_coefficients():
    e4, e6 = eisenstein(4, 15), eisenstein(6, 15)
    assert e4[0] == 1 and e4[1] == 240 and e6[1] == -504
    assert [e4[n] for n in range(1, 15)] == [240 * sigma(3, n) for n in range(1, 15)]
    assert [e6[n] for n in range(1, 15)] == [-504 * sigma(5, n) for n in range(1, 15)]


@pytest.mark.parametrize("k,b", [(2, Fraction(1, 6)), (4, Fraction(-1, 30)), (6, Fraction(1, 42)),
                                 (12, Fraction(-691, 2730))])
def test_bernoulli(k, b):
    assert bernoulli(k) == b


def test_ramanujan_identity():
    e4, e6 = eisenstein(4, 30), eisenstein(6, 30)
    assert (delta(30).scale(1728) + e6 ** 2).agrees_with(e4 ** 3)


@settings(max_examples=60)
@given(series(), series(), series())
def test_ring_laws(a, b, c):
    assert ((a + b) * c).agrees_with(a * c + b * c)
    assert (a * b).agrees_with(b * a)
    assert ((a * b) * c).agrees_with(a * (b * c))


@settings(max_examples=200)
@given(series(invertible=True))
def test_invert_two_sided(a):
    inv = a.invert()
    one = QExpansion.one(a.prec, a.denom)
    assert (a * inv).agrees_with(one)
    assert (inv * a).agrees_with(one)


def test_precision_rules():
    a = QExpansion({1: 1}, 5)
    b = QExpansion({2: 3, 3: 1}, 7)
    assert (a * b).prec == min(5 + 2, 7 + 1)
    assert (a + b).prec == 5
    assert QExpansion({6: 1}, 24, 6).rescale(12).prec == 48


def test_getitem_beyond_precision():
    with pytest.raises(TruncationInsufficient):
        delta(5)[5]


def test_json_round_trip():
    f = QExpansion({3: Fraction(7, 12), 5: -24}, 9, 8)
    d = f.to_dict()
    assert d == {"denom": 8, "prec": 9, "coeffs": [[3, "7/12"], [5, "-24"]]}
    assert QExpansion.from_json(f.to_json()) == f


@pytest.mark.parametrize("k", range(0, 62, 2))
def test_miller_basis_dimension(k):
    assert dim_cusp(k) == dim_cusp_by_monomials(k)
    prec = dim_cusp(k) + 4
    b = miller_basis(k, prec)
    assert len(b) == dim_cusp(k)
    d = len(b)
    for i, f in enumerate(b.forms):
        assert f.valuation() == i + 1 and f[i + 1] == 1
        assert all(f[j + 1] == 0 for j in range(d) if j != i)


def test_miller_basis_examples():
    assert len(miller_basis(10, 10)) == 0
    (f12,) = miller_basis(12, 10).forms
    assert f12.agrees_with(delta(10))
    (f22,) = miller_basis(22, 10).forms
    assert f22.valuation() == 1 and f22[1] == 1
    # Delta * E10 = Delta E4 E6: q - 288 q^2 + ...
    assert f22[2] == -24 + 240 - 504


def test_miller_basis_precision_too_low():
    with pytest.raises(PrecisionTooLow):
        miller_basis(36, 4)


def test_cusp_decompose_examples():
    d = delta(20)
    assert cusp_decompose(d, 12) == [1]
    assert cusp_decompose(QExpansion({}, 20), 12) == [0]
    assert cusp_decompose(d.scale(3), 12) == [3]
    with pytest.raises(NotInSpan):
        cusp_decompose(eisenstein(4, 20) * d, 12)


@pytest.mark.parametrize("k", [24, 36, 48])
def test_cusp_decompose_resynthesis(k):
    b = miller_basis(k, 40)
    coords_in = [Fraction(i + 2, 3) * (-1) ** i for i in range(len(b))]
    f = QExpansion({}, 40)
    for c, g in zip(coords_in, b.forms):
        f = f + g.scale(c)
    coords = cusp_decompose(f, k, b)
    assert coords == coords_in
    g = QExpansion({}, 40)
    for c, h in zip(coords, b.forms):
        g = g + h.scale(c)
    assert g == f


def test_first_sign_change():
    assert first_sign_change(delta(3)) == (1, 2)
    assert first_sign_change(-delta(3)) == (2, 1)
    assert first_sign_change(eisenstein(4, 40)) == (0, None)
    with pytest.raises(TruncationInsufficient):
        first_sign_change(eisenstein(4, 40), require=True)
