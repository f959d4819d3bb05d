import os
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from siegel_signs import _pykernels, kernels

backends = [_pykernels]
try:
    from siegel_signs import _ckernels
except ImportError:  # extension not built
    _ckernels = None
else:
    backends.append(_ckernels)

values = st.one_of(st.integers(-10**30, 10**30), st.fractions(max_denominator=9))
dense = st.lists(values, min_size=1, max_size=12)


@st.composite
def tables(draw):
    out = {}
    for n in draw(st.lists(st.integers(0, 6), unique=True, max_size=5)):
        lo = draw(st.integers(-4, 2))
        out[n] = (lo, draw(st.lists(values, min_size=1, max_size=6)))
    return out


def naive2d(a, b, nlo, nhi):
    acc = {}
    for n1, (lo1, r1) in a.items():
        for n2, (lo2, r2) in b.items():
            if nlo <= n1 + n2 < nhi:
                for i, x in enumerate(r1):
                    for j, y in enumerate(r2):
                        key = (n1 + n2, lo1 + lo2 + i + j)
                        acc[key] = acc.get(key, 0) + x * y
    return {k: v for k, v in acc.items() if v}


def flatten(rows):
    return {(n, lo + j): c for n, (lo, row) in rows.items() for j, c in enumerate(row) if c}


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")
    if os.environ.get("SIEGEL_SIGNS_PURE_PYTHON") == "1":
        assert kernels.BACKEND == "python"
    elif _ckernels is not None:
        assert kernels.BACKEND == "cython"


@pytest.mark.parametrize("impl", backends)
@settings(max_examples=80)
@given(dense, dense, st.integers(0, 20))
def test_conv1d(impl, a, b, n):
    want = [sum(a[i] * b[k - i] for i in range(len(a)) if 0 <= k - i < len(b)) for k in range(n)]
    assert impl.conv1d(a, b, n) == want


@pytest.mark.parametrize("impl", backends)
@settings(max_examples=80)
@given(dense.filter(lambda u: u[0] != 0), st.integers(0, 12))
def test_inv1d(impl, u, n):
    w = impl.inv1d(u, n)
    prod = _pykernels.conv1d(u, w, n)
    assert prod == [1] + [0] * (n - 1) if n else prod == []


@pytest.mark.parametrize("impl", backends)
@settings(max_examples=80)
@given(tables(), tables(), st.integers(0, 6), st.integers(0, 14))
def test_conv2d(impl, a, b, nlo, span):
    got = flatten(impl.conv2d(a, b, nlo, nlo + span))
    assert got == naive2d(a, b, nlo, nlo + span)


@pytest.mark.skipif(_ckernels is None, reason="extension not built")
def test_backends_agree_exactly():
    a = [Fraction(i, i + 1) * (-1) ** i for i in range(30)]
    b = [3 ** i - 7 for i in range(30)]
    assert _ckernels.conv1d(a, b, 30) == _pykernels.conv1d(a, b, 30)
    assert _ckernels.inv1d(b[1:], 20) == _pykernels.inv1d(b[1:], 20)
