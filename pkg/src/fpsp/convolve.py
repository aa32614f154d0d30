"""Exact integer cyclic convolution via number-theoretic transforms.

This is the "transform" oracle behind representation-function histograms:
counts must come out bit-exact, so everything runs in modular integer
arithmetic, never floats.  The convolution is computed modulo two NTT-friendly
primes (998244353 = 119*2^23+1 with generator 3, 754974721 = 45*2^24+1 with
generator 11) and recombined by CRT.  The combined modulus ~7.5e17 exceeds
p^2 for every admissible field, comfortably above the true coefficients,
which are bounded by the vector length <= 2^20.

int64 never overflows here: residues are < 2^30, so butterfly products stay
< 2^60, and the CRT lift stays < 2^60.
"""

from __future__ import annotations

import numpy as np

from .errors import BadParams

_P1, _G1 = 998244353, 3
_P2, _G2 = 754974721, 11
_INV_P1_MOD_P2 = pow(_P1, _P2 - 2, _P2)

_MAX_LOG2 = 23  # limited by _P1's 2-adic valuation

_bitrev_cache: dict[int, np.ndarray] = {}
_twiddle_cache: dict[tuple[int, int, bool], np.ndarray] = {}


def _bitrev(n: int) -> np.ndarray:
    got = _bitrev_cache.get(n)
    if got is not None:
        return got
    bits = n.bit_length() - 1
    idx = np.arange(n, dtype=np.int64)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        rev = (rev << 1) | ((idx >> b) & 1)
    _bitrev_cache[n] = rev
    return rev


def _powmod_vec(base: int, exps: np.ndarray, prime: int) -> np.ndarray:
    """base^exps mod prime, vectorized square-and-multiply."""
    result = np.ones(len(exps), dtype=np.int64)
    b = base % prime
    e = exps.copy()
    while e.max(initial=0) > 0:
        odd = (e & 1).astype(bool)
        result[odd] = result[odd] * b % prime
        b = b * b % prime
        e >>= 1
    return result


def _twiddles(prime: int, gen: int, length: int, invert: bool) -> np.ndarray:
    key = (prime, length, invert)
    got = _twiddle_cache.get(key)
    if got is not None:
        return got
    w0 = pow(gen, (prime - 1) // length, prime)
    if invert:
        w0 = pow(w0, prime - 2, prime)
    w = _powmod_vec(w0, np.arange(length // 2, dtype=np.int64), prime)
    _twiddle_cache[key] = w
    return w


def _ntt(vec: np.ndarray, prime: int, gen: int, invert: bool) -> np.ndarray:
    n = len(vec)
    a = (vec % prime)[_bitrev(n)]
    length = 2
    while length <= n:
        half = length // 2
        w = _twiddles(prime, gen, length, invert)
        blocks = a.reshape(-1, length)
        # copy: the first write below would otherwise clobber the view
        even = blocks[:, :half].copy()
        odd = blocks[:, half:] * w % prime
        blocks[:, :half] = (even + odd) % prime
        blocks[:, half:] = (even - odd) % prime
        a = blocks.reshape(-1)
        length *= 2
    if invert:
        n_inv = pow(n, prime - 2, prime)
        a = a * n_inv % prime
    return a


def _cyclic_mod(x: np.ndarray, y: np.ndarray, n: int, prime: int,
                gen: int) -> np.ndarray:
    """Cyclic convolution of length n (n a power of two) mod prime."""
    fx = _ntt(x, prime, gen, False)
    fy = _ntt(y, prime, gen, False)
    return _ntt(fx * fy % prime, prime, gen, True)


def _crt(r1: np.ndarray, r2: np.ndarray) -> np.ndarray:
    """Lift residue pairs to the unique value below P1*P2 (fits int64)."""
    diff = (r2 - r1) % _P2
    return r1 + _P1 * (diff * _INV_P1_MOD_P2 % _P2)


def cyclic_convolve(x: np.ndarray, y: np.ndarray, n: int) -> np.ndarray:
    """Exact c[k] = sum_i x[i] * y[(k - i) mod n] for 0 <= k < n.

    x and y are nonnegative int vectors of length n with entries small
    enough that every true coefficient stays below ~7.5e17; indicator
    vectors (the only use in this package) are far below that.
    """
    if len(x) != n or len(y) != n:
        raise BadParams("cyclic_convolve needs both vectors of length n")
    if n <= 0:
        raise BadParams("cyclic_convolve needs n >= 1")
    if n == 1:
        return np.array([int(x[0]) * int(y[0])], dtype=np.int64)
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if n & (n - 1) == 0:
        # Power-of-two length transforms directly, no padding or folding.
        if n.bit_length() - 1 > _MAX_LOG2:
            raise BadParams("transform length %d beyond NTT support" % n)
        c1 = _cyclic_mod(x, y, n, _P1, _G1)
        c2 = _cyclic_mod(x, y, n, _P2, _G2)
        return _crt(c1, c2)
    # General n: zero-pad to a power of two, linear convolution, fold.
    need = 2 * n - 1
    size = 1 << (need - 1).bit_length()
    if size.bit_length() - 1 > _MAX_LOG2:
        raise BadParams("padded length %d beyond NTT support" % size)
    xp = np.zeros(size, dtype=np.int64)
    yp = np.zeros(size, dtype=np.int64)
    xp[:n] = x
    yp[:n] = y
    l1 = _cyclic_mod(xp, yp, size, _P1, _G1)
    l2 = _cyclic_mod(xp, yp, size, _P2, _G2)
    lin = _crt(l1, l2)[:need]
    out = lin[:n].copy()
    out[: n - 1] += lin[n:]
    return out


def convolve_naive(x: np.ndarray, y: np.ndarray, n: int) -> np.ndarray:
    """Direct O(n^2) cyclic convolution; the oracle for cyclic_convolve."""
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    out = np.zeros(n, dtype=np.int64)
    for i in range(n):
        if x[i]:
            out += x[i] * np.roll(y, i)
    return out
