"""Compiled O(p) loops modulo p^k using Montgomery multiplication.

Residues are carried as (lo, hi) pairs of uint64 limbs in Montgomery form
x*R mod N with R = 2^128.  The multiply is a numba intrinsic that widens to
i256 in LLVM IR, so the full double-width product is exact; N < 2^127 keeps
t + m*N inside 256 bits.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from llvmlite import ir
from numba import njit, types
from numba.extending import intrinsic

_R = 1 << 128
_MASK = (1 << 64) - 1

_u64 = types.uint64
_pair = types.UniTuple(_u64, 2)


def _join(builder, lo, hi, ty):
    wide_lo = builder.zext(lo, ty)
    wide_hi = builder.shl(builder.zext(hi, ty), ir.Constant(ty, 64))
    return builder.or_(wide_lo, wide_hi)


def _split(context, builder, ret_type, value):
    i64 = ir.IntType(64)
    lo = builder.trunc(value, i64)
    hi = builder.trunc(builder.lshr(value, ir.Constant(value.type, 64)), i64)
    return context.make_tuple(builder, ret_type, [lo, hi])


@intrinsic
def _montmul(typingctx, alo, ahi, blo, bhi, nlo, nhi, qlo, qhi):
    sig = _pair(_u64, _u64, _u64, _u64, _u64, _u64, _u64, _u64)

    def codegen(context, builder, signature, args):
        i128, i256 = ir.IntType(128), ir.IntType(256)
        a = _join(builder, args[0], args[1], i256)
        b = _join(builder, args[2], args[3], i256)
        n = _join(builder, args[4], args[5], i256)
        q = _join(builder, args[6], args[7], i128)
        t = builder.mul(a, b)
        m = builder.mul(builder.trunc(t, i128), q)
        u = builder.add(t, builder.mul(builder.zext(m, i256), n))
        u = builder.lshr(u, ir.Constant(i256, 128))
        u = builder.select(builder.icmp_unsigned(">=", u, n), builder.sub(u, n), u)
        return _split(context, builder, signature.return_type, u)

    return sig, codegen


@intrinsic
def _addmod(typingctx, alo, ahi, blo, bhi, nlo, nhi):
    sig = _pair(_u64, _u64, _u64, _u64, _u64, _u64)

    def codegen(context, builder, signature, args):
        i128 = ir.IntType(128)
        a = _join(builder, args[0], args[1], i128)
        b = _join(builder, args[2], args[3], i128)
        n = _join(builder, args[4], args[5], i128)
        s = builder.add(a, b)
        s = builder.select(builder.icmp_unsigned(">=", s, n), builder.sub(s, n), s)
        return _split(context, builder, signature.return_type, s)

    return sig, codegen


@intrinsic
def _submod(typingctx, alo, ahi, blo, bhi, nlo, nhi):
    sig = _pair(_u64, _u64, _u64, _u64, _u64, _u64)

    def codegen(context, builder, signature, args):
        i128 = ir.IntType(128)
        a = _join(builder, args[0], args[1], i128)
        b = _join(builder, args[2], args[3], i128)
        n = _join(builder, args[4], args[5], i128)
        d = builder.sub(a, b)
        d = builder.select(builder.icmp_unsigned("<", a, b), builder.add(d, n), d)
        return _split(context, builder, signature.return_type, d)

    return sig, codegen


@intrinsic
def _montmul64(typingctx, a, b, n, q):
    sig = _u64(_u64, _u64, _u64, _u64)

    def codegen(context, builder, signature, args):
        i64, i128 = ir.IntType(64), ir.IntType(128)
        a, b, n, q = (builder.zext(x, i128) for x in args)
        t = builder.mul(a, b)
        m = builder.zext(builder.mul(builder.trunc(t, i64), builder.trunc(q, i64)), i128)
        u = builder.lshr(builder.add(t, builder.mul(m, n)), ir.Constant(i128, 64))
        u = builder.select(builder.icmp_unsigned(">=", u, n), builder.sub(u, n), u)
        return builder.trunc(u, i64)

    return sig, codegen


# ctx layout: N lo/hi, -N^-1 mod R lo/hi, R mod N lo/hi, R^2 mod N lo/hi


@njit(cache=True)
def _mul(a, b, ctx):
    return _montmul(a[0], a[1], b[0], b[1], ctx[0], ctx[1], ctx[2], ctx[3])


@njit(cache=True)
def _add(a, b, ctx):
    return _addmod(a[0], a[1], b[0], b[1], ctx[0], ctx[1])


@njit(cache=True)
def _sub(a, b, ctx):
    return _submod(a[0], a[1], b[0], b[1], ctx[0], ctx[1])


@njit(cache=True)
def _pow(x, elo, ehi, ctx):
    result = (ctx[4], ctx[5])
    base = x
    e = elo
    for _ in range(64):
        if e == np.uint64(0) and ehi == np.uint64(0):
            return result
        if e & np.uint64(1):
            result = _mul(result, base, ctx)
        base = _mul(base, base, ctx)
        e >>= np.uint64(1)
    e = ehi
    while e != np.uint64(0):
        if e & np.uint64(1):
            result = _mul(result, base, ctx)
        e >>= np.uint64(1)
        if e != np.uint64(0):
            base = _mul(base, base, ctx)
    return result


@njit(cache=True)
def _inverse_table(p, ctx, phi_lo, phi_hi):
    """Montgomery forms of 1/i for i in 1..p-1 (row 0 unused)."""
    one = (ctx[4], ctx[5])
    prefix = np.empty((p, 2), dtype=np.uint64)
    acc = one
    x = one
    for i in range(1, p):
        prefix[i, 0] = acc[0]
        prefix[i, 1] = acc[1]
        acc = _mul(acc, x, ctx)
        x = _add(x, one, ctx)
    # acc = (p-1)! ; invert by Euler: acc^(phi(N) - 1)
    acc = _pow(acc, phi_lo, phi_hi, ctx)
    out = prefix
    x = _sub(x, one, ctx)
    for i in range(p - 1, 0, -1):
        pre = (prefix[i, 0], prefix[i, 1])
        r = _mul(acc, pre, ctx)
        acc = _mul(acc, x, ctx)
        x = _sub(x, one, ctx)
        out[i, 0] = r[0]
        out[i, 1] = r[1]
    out[0, 0] = np.uint64(0)
    out[0, 1] = np.uint64(0)
    return out


@njit(cache=True)
def _harmonic_pass(p, inv, ctx, p_mont):
    """Power sums of inverses, both product expansions, and the reflected sum.

    Returns rows: H1, H2, H3, H4, upward product, downward product,
    sum of 1/((p-i) i^3); all in Montgomery form.
    """
    zero = (np.uint64(0), np.uint64(0))
    one = (ctx[4], ctx[5])
    h1 = zero
    h2 = zero
    h3 = zero
    h4 = zero
    refl = zero
    up = one
    down = one
    for i in range(1, p):
        x = (inv[i, 0], inv[i, 1])
        sq = _mul(x, x, ctx)
        cube = _mul(sq, x, ctx)
        h1 = _add(h1, x, ctx)
        h2 = _add(h2, sq, ctx)
        h3 = _add(h3, cube, ctx)
        h4 = _add(h4, _mul(sq, sq, ctx), ctx)
        refl = _add(refl, _mul((inv[p - i, 0], inv[p - i, 1]), cube, ctx), ctx)
        px = _mul(p_mont, x, ctx)
        up = _mul(up, _add(one, px, ctx), ctx)
        down = _mul(down, _sub(_sub(one, px, ctx), px, ctx), ctx)
    if (p - 1) % 2 == 1:
        down = _sub(zero, down, ctx)
    out = np.empty((7, 2), dtype=np.uint64)
    for row, val in enumerate((h1, h2, h3, h4, up, down, refl)):
        out[row, 0] = val[0]
        out[row, 1] = val[1]
    return out


@njit(cache=True)
def _inverse_sums(p, inv, ctx):
    """H1 and H2 only (scan fast path)."""
    h1 = (np.uint64(0), np.uint64(0))
    h2 = h1
    for i in range(1, p):
        x = (inv[i, 0], inv[i, 1])
        h1 = _add(h1, x, ctx)
        h2 = _add(h2, _mul(x, x, ctx), ctx)
    out = np.empty((2, 2), dtype=np.uint64)
    out[0, 0], out[0, 1] = h1
    out[1, 0], out[1, 1] = h2
    return out


@njit(cache=True)
def _rising_product(p, shift, ctx):
    """Prod_{i=1}^{p-1} (i + shift), Montgomery form."""
    one = (ctx[4], ctx[5])
    x = _mul((np.uint64(shift + 1), np.uint64(0)), (ctx[6], ctx[7]), ctx)
    acc = one
    for _ in range(1, p):
        acc = _mul(acc, x, ctx)
        x = _add(x, one, ctx)
    return acc


@njit(cache=True)
def _power_sums(p, exps, ctx, spf):
    """Sum_{i=1}^{p-1} i^e for each exponent e (ascending), Montgomery form.

    i -> i^e is completely multiplicative, so only primes are powered;
    composites reuse f(spf(i)) * f(i / spf(i)).  A prime's successive powers
    are chained through the exponent differences.
    """
    n_exp = exps.shape[0]
    totals = np.zeros((n_exp, 2), dtype=np.uint64)
    f = np.empty((p, n_exp, 2), dtype=np.uint64)
    one = (ctx[4], ctx[5])
    r2 = (ctx[6], ctx[7])
    for j in range(n_exp):
        f[1, j, 0] = one[0]
        f[1, j, 1] = one[1]
        totals[j, 0] = one[0]
        totals[j, 1] = one[1]
    for i in range(2, p):
        q = spf[i]
        if q == i:
            base = _mul((np.uint64(i), np.uint64(0)), r2, ctx)
            val = one
            prev = np.uint64(0)
            for j in range(n_exp):
                val = _mul(val, _pow(base, exps[j] - prev, np.uint64(0), ctx), ctx)
                prev = exps[j]
                f[i, j, 0] = val[0]
                f[i, j, 1] = val[1]
        else:
            m = i // q
            for j in range(n_exp):
                val = _mul((f[q, j, 0], f[q, j, 1]), (f[m, j, 0], f[m, j, 1]), ctx)
                f[i, j, 0] = val[0]
                f[i, j, 1] = val[1]
        for j in range(n_exp):
            t = _add((totals[j, 0], totals[j, 1]), (f[i, j, 0], f[i, j, 1]), ctx)
            totals[j, 0] = t[0]
            totals[j, 1] = t[1]
    return totals


@njit(cache=True)
def _pow64(x, e, n, q, one):
    result = one
    base = x
    while e != np.uint64(0):
        if e & np.uint64(1):
            result = _montmul64(result, base, n, q)
        e >>= np.uint64(1)
        if e != np.uint64(0):
            base = _montmul64(base, base, n, q)
    return result


@njit(cache=True)
def _power_sums64(p, exps, ctx, spf):
    """Single-limb variant of _power_sums for moduli below 2^63."""
    n, q, one, r2 = ctx[0], ctx[2], ctx[4], ctx[6]
    n_exp = exps.shape[0]
    totals = np.zeros(n_exp, dtype=np.uint64)
    f = np.empty((p, n_exp), dtype=np.uint64)
    for j in range(n_exp):
        f[1, j] = one
        totals[j] = one
    for i in range(2, p):
        s = spf[i]
        if s == i:
            base = _montmul64(np.uint64(i), r2, n, q)
            val = one
            prev = np.uint64(0)
            for j in range(n_exp):
                val = _montmul64(val, _pow64(base, exps[j] - prev, n, q, one), n, q)
                prev = exps[j]
                f[i, j] = val
        else:
            m = i // s
            for j in range(n_exp):
                f[i, j] = _montmul64(f[s, j], f[m, j], n, q)
        for j in range(n_exp):
            t = totals[j] + f[i, j]
            totals[j] = t - n if t >= n else t
    out = np.zeros((n_exp, 2), dtype=np.uint64)
    out[:, 0] = totals
    return out


@njit(cache=True)
def _scan_pass(p, ctx, phi_lo, phi_hi, seeds):
    """One sweep for the scan fast path, over pairs {i, p-i}.

    With v = i(p-i) and w = 1/v, the pair contributes p w to H1 and
    (p^2 - 2v) w^2 to H2, v to (p-1)! and (p+i)(2p-i) = v + 2p^2 to
    prod_{i<p} (p+i).  v advances by additions only.  Returns rows
    sum w, sum w^2, (p-1)!, prod (p+i); Montgomery form.

    seeds: v and its forward difference at the start of each of the two
    interleaved chains, then 2 and 2p^2, all in Montgomery form.
    """
    one = (ctx[4], ctx[5])
    zero = (np.uint64(0), np.uint64(0))
    h = (p - 1) // 2
    na = (h + 1) // 2
    nb = h - na
    v_a = (seeds[0, 0], seeds[0, 1])
    d_a = (seeds[1, 0], seeds[1, 1])
    v_b = (seeds[2, 0], seeds[2, 1])
    d_b = (seeds[3, 0], seeds[3, 1])
    two = (seeds[4, 0], seeds[4, 1])
    shift = (seeds[5, 0], seeds[5, 1])
    pre_a = np.empty((na, 2), dtype=np.uint64)
    pre_b = np.empty((max(nb, 1), 2), dtype=np.uint64)
    acc_a = one
    acc_b = one
    num_a = one
    num_b = one
    for t in range(na):
        pre_a[t, 0] = acc_a[0]
        pre_a[t, 1] = acc_a[1]
        acc_a = _mul(acc_a, v_a, ctx)
        num_a = _mul(num_a, _add(v_a, shift, ctx), ctx)
        v_a = _add(v_a, d_a, ctx)
        d_a = _sub(d_a, two, ctx)
        if t < nb:
            pre_b[t, 0] = acc_b[0]
            pre_b[t, 1] = acc_b[1]
            acc_b = _mul(acc_b, v_b, ctx)
            num_b = _mul(num_b, _add(v_b, shift, ctx), ctx)
            v_b = _add(v_b, d_b, ctx)
            d_b = _sub(d_b, two, ctx)
    fact = _mul(acc_a, acc_b, ctx)
    num = _mul(num_a, num_b, ctx)
    acc_a = _pow(acc_a, phi_lo, phi_hi, ctx)
    acc_b = _pow(acc_b, phi_lo, phi_hi, ctx)
    s1 = zero
    s2 = zero
    for t in range(na - 1, -1, -1):
        d_a = _add(d_a, two, ctx)
        v_a = _sub(v_a, d_a, ctx)
        w_a = _mul(acc_a, (pre_a[t, 0], pre_a[t, 1]), ctx)
        acc_a = _mul(acc_a, v_a, ctx)
        s1 = _add(s1, w_a, ctx)
        s2 = _add(s2, _mul(w_a, w_a, ctx), ctx)
        if t < nb:
            d_b = _add(d_b, two, ctx)
            v_b = _sub(v_b, d_b, ctx)
            w_b = _mul(acc_b, (pre_b[t, 0], pre_b[t, 1]), ctx)
            acc_b = _mul(acc_b, v_b, ctx)
            s1 = _add(s1, w_b, ctx)
            s2 = _add(s2, _mul(w_b, w_b, ctx), ctx)
    out = np.empty((4, 2), dtype=np.uint64)
    for row, val in enumerate((s1, s2, fact, num)):
        out[row, 0] = val[0]
        out[row, 1] = val[1]
    return out


@njit(cache=True)
def _pow64x2(b1, b2, e, n, q, one):
    """Two bases, one exponent: the independent squarings overlap."""
    r1 = one
    r2 = one
    while e != np.uint64(0):
        if e & np.uint64(1):
            r1 = _montmul64(r1, b1, n, q)
            r2 = _montmul64(r2, b2, n, q)
        e >>= np.uint64(1)
        if e != np.uint64(0):
            b1 = _montmul64(b1, b1, n, q)
            b2 = _montmul64(b2, b2, n, q)
    return r1, r2


@njit(cache=True)
def _bernoulli_sums64(p, ctx, spf):
    """S_{p-5}, S_{p-3}, S_M (M = p^3 - p^2 - 2) for moduli below 2^63.

    Per prime q the powers share one chain:
    q^(p-3) = q^(p-5) q^2,  q^(p-1) = q^(p-3) q^2,
    q^M = q^(p-3) ((q^(p-1))^(p-1))^(p+1)   since M - (p-3) = (p-1)^2 (p+1).
    Primes are powered two at a time; composites then follow from
    f(i) = f(spf(i)) f(i / spf(i)).
    """
    n, q, one, r2 = ctx[0], ctx[2], ctx[4], ctx[6]
    e_small = np.uint64(p - 5)
    e_pm1 = np.uint64(p - 1)
    e_pp1 = np.uint64(p + 1)
    f = np.empty((p, 3), dtype=np.uint64)
    n_primes = 0
    for i in range(2, p):
        if spf[i] == i:
            n_primes += 1
    primes = np.empty(n_primes + 1, dtype=np.int64)
    j = 0
    for i in range(2, p):
        if spf[i] == i:
            primes[j] = i
            j += 1
    primes[n_primes] = primes[n_primes - 1]  # pad to an even count
    for j in range(0, n_primes, 2):
        i1 = primes[j]
        i2 = primes[j + 1]
        b1 = _montmul64(np.uint64(i1), r2, n, q)
        b2 = _montmul64(np.uint64(i2), r2, n, q)
        s1 = _montmul64(b1, b1, n, q)
        s2 = _montmul64(b2, b2, n, q)
        a1, a2 = _pow64x2(b1, b2, e_small, n, q, one)
        c1 = _montmul64(a1, s1, n, q)
        c2 = _montmul64(a2, s2, n, q)
        d1, d2 = _pow64x2(_montmul64(c1, s1, n, q), _montmul64(c2, s2, n, q), e_pm1, n, q, one)
        d1, d2 = _pow64x2(d1, d2, e_pp1, n, q, one)
        f[i1, 0] = a1
        f[i1, 1] = c1
        f[i1, 2] = _montmul64(c1, d1, n, q)
        f[i2, 0] = a2
        f[i2, 1] = c2
        f[i2, 2] = _montmul64(c2, d2, n, q)
    totals = np.zeros(3, dtype=np.uint64)
    for j in range(3):
        f[1, j] = one
        totals[j] = one
    for i in range(2, p):
        s = spf[i]
        if s != i:
            m = i // s
            for j in range(3):
                f[i, j] = _montmul64(f[s, j], f[m, j], n, q)
        for j in range(3):
            t = totals[j] + f[i, j]
            totals[j] = t - n if t >= n else t
    out = np.zeros((3, 2), dtype=np.uint64)
    out[:, 0] = totals
    return out


@njit(cache=True)
def _spf_table(n):
    spf = np.zeros(n, dtype=np.int32)
    for i in range(2, n):
        if spf[i] == 0:
            spf[i] = i
            if i * i < n:
                for j in range(i * i, n, i):
                    if spf[j] == 0:
                        spf[j] = i
    return spf


class Montgomery:
    """Python-side handle on one modulus: packs constants and converts pairs.

    ``width`` is the Montgomery radix exponent: 128 for the two-limb kernels,
    64 for the single-limb ones (modulus below 2^63).
    """

    def __init__(self, modulus: int, width: int = 128):
        limit = 1 << (width - 1)
        if modulus % 2 == 0 or not 1 < modulus < limit:
            raise ValueError(f"Montgomery modulus must be odd and below 2^{width - 1}")
        self.modulus = modulus
        self.width = width
        radix = 1 << width
        q = (-pow(modulus, -1, radix)) % radix
        r1 = radix % modulus
        r2 = radix * radix % modulus
        self.ctx = np.array(
            [v & _MASK if i % 2 == 0 else v >> 64
             for v in (modulus, q, r1, r2) for i in (0, 1)],
            dtype=np.uint64,
        )
        self._radix = radix
        self._rinv = pow(radix, -1, modulus)

    def to_mont(self, x: int) -> tuple[np.uint64, np.uint64]:
        y = x % self.modulus * self._radix % self.modulus
        return np.uint64(y & _MASK), np.uint64(y >> 64)

    def from_mont(self, lo, hi) -> int:
        return ((int(hi) << 64) | int(lo)) * self._rinv % self.modulus

    def rows(self, arr: np.ndarray) -> list[int]:
        return [self.from_mont(lo, hi) for lo, hi in arr]


@lru_cache(maxsize=64)
def montgomery(p: int, k: int, width: int = 128) -> Montgomery:
    return Montgomery(p**k, width)


_spf_cache = np.zeros(0, dtype=np.int32)


def spf_table(n: int) -> np.ndarray:
    """Smallest-prime-factor table covering 0..n-1; grown on demand, per process."""
    global _spf_cache
    if _spf_cache.shape[0] < n:
        _spf_cache = _spf_table(max(n, 2 * _spf_cache.shape[0], 1 << 12))
    return _spf_cache


def inverse_table(p: int, k: int) -> np.ndarray:
    mont = montgomery(p, k)
    phi = p ** (k - 1) * (p - 1) - 1
    return _inverse_table(p, mont.ctx, np.uint64(phi & _MASK), np.uint64(phi >> 64))


def inverse_values(p: int, k: int) -> list[int]:
    """Plain integers 1/i mod p^k for i = 1..p-1 (index 0 holds 0)."""
    mont = montgomery(p, k)
    return [0] + mont.rows(inverse_table(p, k)[1:])


def harmonic_pass(p: int, k: int) -> dict[str, int]:
    mont = montgomery(p, k)
    inv = inverse_table(p, k)
    res = mont.rows(_harmonic_pass(p, inv, mont.ctx, mont.to_mont(p)))
    keys = ("h1", "h2", "h3", "h4", "upward", "downward", "reflected")
    return dict(zip(keys, res))


def inverse_sums(p: int, k: int) -> tuple[int, int]:
    mont = montgomery(p, k)
    h1, h2 = mont.rows(_inverse_sums(p, inverse_table(p, k), mont.ctx))
    return h1, h2


def rising_product(p: int, k: int, shift: int) -> int:
    mont = montgomery(p, k)
    return mont.from_mont(*_rising_product(p, shift, mont.ctx))


def factorial_ratio_binomial(p: int, k: int) -> int:
    """C(2p-1, p-1) = (p+1)...(2p-1) / (p-1)!  modulo p^k."""
    mont = montgomery(p, k)
    num = rising_product(p, k, p)
    den = rising_product(p, k, 0)
    return num * pow(den, -1, mont.modulus) % mont.modulus


def power_sums(p: int, k: int, exponents: list[int]) -> list[int]:
    """Sum_{i=1}^{p-1} i^e mod p^k for each exponent, in the order given."""
    if any(e < 0 or e >= 1 << 64 for e in exponents):
        raise ValueError("power-sum exponents must fit in 64 bits")
    if not exponents:
        return []
    narrow = p**k < (1 << 63)
    mont = montgomery(p, k, 64 if narrow else 128)
    order = sorted(set(exponents))
    exps = np.array(order, dtype=np.uint64)
    kernel = _power_sums64 if narrow else _power_sums
    rows = mont.rows(kernel(p, exps, mont.ctx, spf_table(p)))
    by_exp = dict(zip(order, rows))
    return [by_exp[e] for e in exponents]


def scan_sums(p: int, k: int) -> tuple[int, int, int]:
    """(H1, H2, C(2p-1, p-1)) modulo p^k in a single fused sweep."""
    if p < 5:
        raise ValueError("needs p >= 5")
    mont = montgomery(p, k)
    n = mont.modulus
    phi = p ** (k - 1) * (p - 1) - 1
    na = ((p - 1) // 2 + 1) // 2
    # v(i) = i(p-i) has forward difference p - 2i - 1
    starts = (1, na + 1)
    vals = []
    for i in starts:
        vals += [i * (p - i), p - 2 * i - 1]
    vals += [2, 2 * p * p]
    seeds = np.array([mont.to_mont(x % n) for x in vals], dtype=np.uint64)
    s1, s2, fact, num = mont.rows(
        _scan_pass(p, mont.ctx, np.uint64(phi & _MASK), np.uint64(phi >> 64), seeds)
    )
    h1 = p * s1 % n
    h2 = (p * p * s2 - 2 * s1) % n
    return h1, h2, num * pow(fact, -1, n) % n


def bernoulli_sums(p: int, k: int) -> tuple[int, int, int]:
    """(S_{p-5}, S_{p-3}, S_{p^3-p^2-2}) modulo p^k, for p >= 7."""
    if p < 7:
        raise ValueError("needs p >= 7")
    if p**k >= (1 << 63):
        return tuple(power_sums(p, k, [p - 5, p - 3, p**3 - p**2 - 2]))
    mont = montgomery(p, k, 64)
    return tuple(mont.rows(_bernoulli_sums64(p, mont.ctx, spf_table(p))))
