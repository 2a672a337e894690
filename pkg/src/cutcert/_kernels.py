"""Compiled arithmetic over F_p, p = 2**61 - 1.

All arrays are ``np.uint64`` holding canonical residues in ``[0, p)``.
Products are formed from 32-bit limbs so nothing overflows 64 bits.
"""
import numpy as np
from numba import njit

PRIME = (1 << 61) - 1

_P = np.uint64(PRIME)
_M32 = np.uint64(0xFFFFFFFF)
_M29 = np.uint64((1 << 29) - 1)
_S3 = np.uint64(3)
_S29 = np.uint64(29)
_S32 = np.uint64(32)
_S61 = np.uint64(61)
_ZERO = np.uint64(0)
_ONE = np.uint64(1)


@njit(cache=True, inline="always")
def addmod(a, b):
    r = a + b
    if r >= _P:
        r -= _P
    return r


@njit(cache=True, inline="always")
def submod(a, b):
    if a >= b:
        return a - b
    return a + (_P - b)


@njit(cache=True, inline="always")
def mulmod(a, b):
    al = a & _M32
    ah = a >> _S32
    bl = b & _M32
    bh = b >> _S32
    lo = al * bl
    mid = ah * bl + al * bh
    hi = ah * bh
    # a*b = hi*2^64 + mid*2^32 + lo and 2^61 == 1 (mod p)
    r = (lo & _P) + (lo >> _S61)
    r += (mid >> _S29) + ((mid & _M29) << _S32)
    r += hi << _S3
    r = (r & _P) + (r >> _S61)
    r = (r & _P) + (r >> _S61)
    if r >= _P:
        r -= _P
    return r


@njit(cache=True)
def powmod(a, e):
    result = _ONE
    base = a
    while e > 0:
        if e & 1:
            result = mulmod(result, base)
        base = mulmod(base, base)
        e >>= 1
    return result


@njit(cache=True)
def invmod(a):
    return powmod(a, PRIME - 2)


@njit(cache=True)
def add_scaled_powers(syn, u, alpha):
    """syn[j] += u * alpha**j for every j."""
    pw = u
    for j in range(syn.shape[0]):
        syn[j] = addmod(syn[j], pw)
        pw = mulmod(pw, alpha)


@njit(cache=True)
def add_inplace(dst, src):
    flat_d = dst.reshape(-1)
    flat_s = src.reshape(-1)
    for j in range(flat_d.shape[0]):
        flat_d[j] = addmod(flat_d[j], flat_s[j])


@njit(cache=True)
def negate_inplace(dst):
    flat = dst.reshape(-1)
    for j in range(flat.shape[0]):
        if flat[j] != _ZERO:
            flat[j] = _P - flat[j]


@njit(cache=True)
def sum_rows(data, rows):
    """Field sum of ``data[r]`` over the row indices ``rows`` (0-based)."""
    out = np.zeros(data.shape[1:], dtype=np.uint64)
    flat_out = out.reshape(-1)
    for r in rows:
        flat = data[r].reshape(-1)
        for j in range(flat.shape[0]):
            flat_out[j] = addmod(flat_out[j], flat[j])
    return out


@njit(cache=True)
def horner(coeffs, x):
    """Evaluate sum coeffs[i] x**i (lowest degree first)."""
    acc = _ZERO
    for i in range(coeffs.shape[0] - 1, -1, -1):
        acc = addmod(mulmod(acc, x), coeffs[i])
    return acc


@njit(cache=True)
def horner_many(coeffs, xs):
    out = np.empty(xs.shape[0], dtype=np.uint64)
    for j in range(xs.shape[0]):
        out[j] = horner(coeffs, xs[j])
    return out


@njit(cache=True)
def berlekamp_massey(s):
    """Shortest LFSR for ``s``.

    Returns ``(lam, L)`` where ``lam[:L + 1]`` is the connection polynomial
    with ``lam[0] == 1`` and ``s[n] + sum_{i=1..L} lam[i] s[n-i] == 0``.
    """
    N = s.shape[0]
    C = np.zeros(N + 2, dtype=np.uint64)
    B = np.zeros(N + 2, dtype=np.uint64)
    T = np.zeros(N + 2, dtype=np.uint64)
    C[0] = _ONE
    B[0] = _ONE
    L = 0
    shift = 1
    b = _ONE
    for n in range(N):
        d = s[n]
        for i in range(1, L + 1):
            d = addmod(d, mulmod(C[i], s[n - i]))
        if d == _ZERO:
            shift += 1
            continue
        coef = mulmod(d, invmod(b))
        if 2 * L <= n:
            T[:] = C
            for j in range(N + 2 - shift):
                if B[j] != _ZERO:
                    C[j + shift] = submod(C[j + shift], mulmod(coef, B[j]))
            L = n + 1 - L
            B[:] = T
            b = d
            shift = 1
        else:
            for j in range(N + 2 - shift):
                if B[j] != _ZERO:
                    C[j + shift] = submod(C[j + shift], mulmod(coef, B[j]))
            shift += 1
    return C[: L + 1].copy(), L


@njit(cache=True)
def locate_support(lam, m):
    """Indices i in [1, m] with lam(1/i) == 0.

    Evaluates the reversed polynomial z**L * lam(1/z) at z = i, which
    vanishes exactly at the same points and needs no inversions. Stops
    early once more than ``L`` roots are seen (cannot be a locator).
    """
    L = lam.shape[0] - 1
    out = np.empty(L + 1, dtype=np.int64)
    found = 0
    for i in range(1, m + 1):
        z = np.uint64(i)
        acc = _ZERO
        for k in range(L + 1):
            acc = addmod(mulmod(acc, z), lam[k])
        if acc == _ZERO:
            if found == L:
                found += 1
                break
            out[found] = i
            found += 1
    return out[:found].copy()


@njit(cache=True)
def solve_values(s, lam, support):
    """Values on a known support via Forney's formula.

    With S(z) = sum s_j z^j and Omega = S * lam mod z^L, the value at
    point a is  -a * Omega(1/a) / lam'(1/a).
    """
    L = support.shape[0]
    omega = np.zeros(L, dtype=np.uint64)
    for i in range(L):
        acc = _ZERO
        for j in range(i + 1):
            acc = addmod(acc, mulmod(s[j], lam[i - j]))
        omega[i] = acc
    deriv = np.zeros(max(L, 1), dtype=np.uint64)
    for i in range(1, L + 1):
        deriv[i - 1] = mulmod(np.uint64(i), lam[i])
    out = np.empty(L, dtype=np.uint64)
    for idx in range(L):
        a = np.uint64(support[idx])
        x = invmod(a)
        num = mulmod(a, horner(omega, x))
        den = horner(deriv, x)
        if den == _ZERO:
            out[idx] = _ZERO
        else:
            out[idx] = submod(_ZERO, mulmod(num, invmod(den)))
    return out


@njit(cache=True)
def encode(support, values, length):
    """Syndromes sum_i values[i] * support[i]**j for j < length."""
    out = np.zeros(length, dtype=np.uint64)
    for idx in range(support.shape[0]):
        add_scaled_powers(out, values[idx], np.uint64(support[idx]))
    return out


@njit(cache=True)
def hash_levels(coeffs, coords, m, levels):
    """Geometric level for each coordinate.

    u = (poly(coord) mod p) mod m + 1, then level = floor(log2(m / u)) + 1
    clamped to ``levels``; with m = 2**levels this is levels + 1 - bitlen(u - 1).
    """
    out = np.empty(coords.shape[0], dtype=np.int64)
    mm = np.uint64(m)
    for j in range(coords.shape[0]):
        u = horner(coeffs, np.uint64(coords[j])) % mm + _ONE
        v = u - _ONE
        bl = 0
        while v > _ZERO:
            v >>= _ONE
            bl += 1
        lvl = levels + 1 - bl
        if lvl > levels:
            lvl = levels
        out[j] = lvl
    return out
