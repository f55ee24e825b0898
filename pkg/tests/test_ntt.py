import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fpsums.ntt import NTT_PRIMES, cyclic_convolve_exact, cyclic_convolve_naive, ntt


def test_ntt_round_trip():
    for q, g in NTT_PRIMES:
        a = np.arange(16, dtype=np.int64)
        back = ntt(ntt(a, q, g), q, g, invert=True)
        assert np.array_equal(back, a)


def test_ntt_is_a_dft_mod_q():
    q, g = NTT_PRIMES[1]
    a = np.array([1, 2, 3, 4], dtype=np.int64)
    w = pow(g, (q - 1) // 4, q)
    want = [sum(int(a[j]) * pow(w, j * k, q) for j in range(4)) % q for k in range(4)]
    assert ntt(a, q, g).tolist() == want


def test_small_exact_values():
    out = cyclic_convolve_exact(np.array([1, 2, 0]), np.array([0, 1, 1]))
    assert out.tolist() == [2, 1, 3]


@pytest.mark.parametrize("n", [1, 2, 3, 7, 16, 100, 1008])
def test_matches_naive(n):
    rng = np.random.default_rng(n)
    a = rng.integers(0, 50, n)
    b = rng.integers(0, 50, n)
    assert np.array_equal(cyclic_convolve_exact(a, b), cyclic_convolve_naive(a, b))


def test_negative_entries():
    rng = np.random.default_rng(7)
    a = rng.integers(-1000, 1000, 60)
    b = rng.integers(-1000, 1000, 60)
    assert np.array_equal(cyclic_convolve_exact(a, b), cyclic_convolve_naive(a, b))


def test_wide_values_stay_exact():
    # products near 2^90 must come back as exact Python ints
    a = np.array([2**45, 3, 2**44 + 1], dtype=object)
    b = np.array([2**45 - 1, 2**40, 5], dtype=object)
    got = cyclic_convolve_exact(a, b)
    want = [sum(a[j] * b[(k - j) % 3] for j in range(3)) for k in range(3)]
    assert [int(x) for x in got] == want


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 10**6), min_size=1, max_size=40), st.data())
def test_property_matches_naive(a, data):
    b = data.draw(st.lists(st.integers(0, 10**6), min_size=len(a), max_size=len(a)))
    a, b = np.array(a), np.array(b)
    assert np.array_equal(cyclic_convolve_exact(a, b), cyclic_convolve_naive(a, b))
