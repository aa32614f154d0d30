"""Exact NTT convolution against the schoolbook oracle."""

import numpy as np
import pytest

from fpsp.convolve import convolve_naive, cyclic_convolve
from fpsp.errors import BadParams
from fpsp.rng import CounterRng


def test_lengths_small_sweep():
    # every length 1..40 hits at least one of: the trivial branch, the
    # direct power-of-two transform, the pad-and-fold path
    for n in range(1, 41):
        r = CounterRng(n, "conv-small")
        x = r.integers(0, 50, n)
        y = r.integers(0, 50, n)
        got = cyclic_convolve(x, y, n)
        want = convolve_naive(x, y, n)
        assert np.array_equal(got, want), "length %d" % n


def test_awkward_prime_lengths():
    for n in (17, 97, 101, 257, 1009):
        r = CounterRng(n, "conv-awkward")
        x = r.integers(0, 1000, n)
        y = r.integers(0, 1000, n)
        assert np.array_equal(cyclic_convolve(x, y, n),
                              convolve_naive(x, y, n)), n


def test_large_entries_no_overflow():
    # coefficients up to 10^6 * 10^6 * 64 = 6.4e16, inside the CRT modulus
    # ~7.5e17 but far outside a single 30-bit prime: catches any missing
    # CRT recombination
    r = CounterRng(0, "conv-big")
    n = 64
    x = r.integers(0, 10 ** 6, n)
    y = r.integers(0, 10 ** 6, n)
    got = cyclic_convolve(x, y, n)
    want = np.array([sum(int(x[i]) * int(y[(k - i) % n]) for i in range(n))
                     for k in range(n)], dtype=np.int64)
    assert np.array_equal(got, want)
    assert want.max() > 998244353  # the check is only meaningful past one prime


def test_indicator_autocorrelation_identity():
    # for indicators, sum of the cyclic convolution is |X| * |Y|
    r = CounterRng(1, "conv-ind")
    n = 128
    x = (r.integers(0, 2, n) > 0).astype(np.int64)
    y = (r.integers(0, 2, n) > 0).astype(np.int64)
    c = cyclic_convolve(x, y, n)
    assert int(c.sum()) == int(x.sum()) * int(y.sum())
    assert (c >= 0).all()


def test_length_one_and_errors():
    assert cyclic_convolve(np.array([7]), np.array([6]), 1).tolist() == [42]
    with pytest.raises(BadParams):
        cyclic_convolve(np.array([1, 2]), np.array([1]), 2)
    with pytest.raises(BadParams):
        cyclic_convolve(np.array([], dtype=np.int64),
                        np.array([], dtype=np.int64), 0)


def test_seeded_random_lengths_loop():
    # 60 random (length, values) instances, mixed magnitudes
    rng = CounterRng(42, "conv-loop")
    for trial in range(60):
        n = 1 + int(rng.below(300))
        hi = 2 + int(rng.below(5000))
        x = rng.integers(0, hi, n)
        y = rng.integers(0, hi, n)
        assert np.array_equal(cyclic_convolve(x, y, n),
                              convolve_naive(x, y, n)), (trial, n, hi)
