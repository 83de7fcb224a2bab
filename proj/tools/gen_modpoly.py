#!/usr/bin/env python3
"""Generate classical modular polynomials Phi_l(X, Y) from q-expansions of j.

Writes the text format read by the library:

    ell <l>
    i j c        (one line per nonzero coefficient of X^i Y^j, i >= j)

Usage: gen_modpoly.py L [L ...] -o DIR
"""
import argparse
import os
import sys


def sigma3_table(n):
    s = [0] * (n + 1)
    for d in range(1, n + 1):
        d3 = d ** 3
        for m in range(d, n + 1, d):
            s[m] += d3
    return s


def mul(a, b, n):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x == 0:
            continue
        for k, y in enumerate(b[: n - i]):
            out[i + k] += x * y
    return out


def mul_kronecker(a, b, n):
    """Truncated product of series with nonnegative integer coefficients."""
    a = a[:n]
    b = b[:n]
    bound = max(a) * max(b) * min(len(a), len(b))
    bits = bound.bit_length() + 1
    pa = 0
    for x in reversed(a):
        pa = (pa << bits) | x
    pb = 0
    for x in reversed(b):
        pb = (pb << bits) | x
    prod = pa * pb
    mask = (1 << bits) - 1
    out = []
    for _ in range(n):
        out.append(prod & mask)
        prod >>= bits
    return out


def inverse(a, n):
    inv = [0] * n
    inv[0] = 1  # a[0] == 1
    for k in range(1, n):
        s = 0
        for i in range(1, k + 1):
            if i < len(a):
                s += a[i] * inv[k - i]
        inv[k] = -s
    return inv


def j_times_q(n):
    """Coefficients of q*j(q) = 1 + 744 q + 196884 q^2 + ..."""
    s3 = sigma3_table(n)
    e4 = [1] + [240 * s3[k] for k in range(1, n)]
    e4cube = mul(mul(e4, e4, n), e4, n)
    # prod (1 - q^k)^24
    eta = [0] * n
    eta[0] = 1
    for k in range(1, n):
        # multiply by (1 - q^k), 24 times via binomial expansion
        for _ in range(24):
            for m in range(n - 1, k - 1, -1):
                eta[m] -= eta[m - k]
    return mul(e4cube, inverse(eta, n), n)


class Laurent:
    """Truncated Laurent series in q: coefficients for exponents lo..hi."""

    def __init__(self, lo, coeffs):
        self.lo = lo
        self.c = list(coeffs)

    @property
    def hi(self):
        return self.lo + len(self.c) - 1

    def get(self, e):
        k = e - self.lo
        if 0 <= k < len(self.c):
            return self.c[k]
        return 0


def mul_laurent(a, b, hi):
    lo = a.lo + b.lo
    out = [0] * (hi - lo + 1)
    for i, x in enumerate(a.c):
        if x == 0:
            continue
        ea = a.lo + i
        for k, y in enumerate(b.c):
            e = ea + b.lo + k
            if e > hi:
                break
            out[e - lo] += x * y
    return Laurent(lo, out)


def add_laurent(a, b, scale=1):
    lo = min(a.lo, b.lo)
    hi = max(a.hi, b.hi)
    return Laurent(lo, [a.get(e) + scale * b.get(e) for e in range(lo, hi + 1)])


def modular_polynomial(l):
    top = l + 3          # q-precision kept for the E_i
    check = 2            # extra exponents used to verify the j-expansion
    nx = l * (top + 1) + l + 2
    jq = j_times_q(nx)
    # powers (q j)^k, k = 0..l+1
    powers = [[1] + [0] * (nx - 1), jq]
    for k in range(2, l + 2):
        powers.append(mul_kronecker(powers[-1], jq, nx))

    # power sums over the l conjugates j((tau + m)/l)
    psums = [None]
    for k in range(1, l + 1):
        coeffs = {}
        for m, c in enumerate(powers[k]):
            n = m - k
            if n % l == 0:
                e = n // l
                if e <= top:
                    coeffs[e] = l * c
        lo = min(coeffs)
        psums.append(Laurent(lo, [coeffs.get(e, 0) for e in range(lo, top + 1)]))

    # Newton identities -> elementary symmetric functions E_i
    elem = [Laurent(0, [1] + [0] * top)]
    for i in range(1, l + 1):
        acc = Laurent(0, [0] * (top + 1))
        for k in range(1, i + 1):
            term = mul_laurent(elem[i - k], psums[k], top)
            acc = add_laurent(acc, term, 1 if k % 2 == 1 else -1)
        lo = acc.lo
        cs = []
        for e in range(lo, top + 1):
            v = acc.get(e)
            if v % i:
                raise RuntimeError("non-integral symmetric function")
            cs.append(v // i)
        elem.append(Laurent(lo, cs))

    # y = j(q^l)
    ycoef = {}
    for m, c in enumerate(jq):
        e = l * (m - 1)
        if e > top:
            break
        ycoef[e] = c
    y = Laurent(-l, [ycoef.get(e, 0) for e in range(-l, top + 1)])

    hi = check
    jpow = []  # j^d as Laurent series up to exponent hi
    for d in range(0, l + 2):
        cs = powers[d][: hi + d + 1]
        jpow.append(Laurent(-d, cs))

    terms = {}
    for i in range(0, l + 2):
        e_i = Laurent(0, [0] * (hi + 1))
        if i <= l:
            e_i = add_laurent(e_i, elem[i])
        if i >= 1:
            e_i = add_laurent(e_i, mul_laurent(y, elem[i - 1], hi))
        sign = -1 if i % 2 else 1
        rem = Laurent(e_i.lo, [e_i.get(e) for e in range(e_i.lo, hi + 1)])
        for d in range(-rem.lo, -1, -1):
            c = rem.get(-d)
            if c:
                terms[(l + 1 - i, d)] = sign * c
                rem = add_laurent(rem, jpow[d], -c)
        c0 = rem.get(0)
        if c0:
            terms[(l + 1 - i, 0)] = sign * c0
        for e in range(1, hi + 1):
            if rem.get(e) != 0:
                raise RuntimeError("expansion did not terminate (precision)")
    for (a, b), c in terms.items():
        if terms.get((b, a)) != c:
            raise RuntimeError("result is not symmetric")
    return terms


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("ells", type=int, nargs="+")
    ap.add_argument("-o", "--outdir", default=".")
    args = ap.parse_args()
    os.makedirs(args.outdir, exist_ok=True)
    for l in args.ells:
        terms = modular_polynomial(l)
        path = os.path.join(args.outdir, f"phi_{l}.txt")
        with open(path, "w") as f:
            f.write(f"ell {l}\n")
            for (a, b) in sorted(terms, reverse=True):
                if a >= b:
                    f.write(f"{a} {b} {terms[(a, b)]}\n")
        print(f"wrote {path} ({len(terms)} terms)", file=sys.stderr)


if __name__ == "__main__":
    main()
