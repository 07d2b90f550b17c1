"""Brute-force reference values for the density unit and acceptance tests.

Each value is computed by direct enumeration over every window start with
numpy prefix sums, independently of the C++ scans.
"""
import math
import numpy as np


def indicator(kind, hi):
    x = np.arange(hi + 1)
    ind = np.zeros(hi + 1, dtype=bool)
    if kind == "full":
        ind[1:] = True
    elif kind == "even":
        ind[2::2] = True
    elif kind == "squarefree":
        ind[1:] = True
        p = 2
        while p * p <= hi:
            ind[p * p :: p * p] = False
            p += 1
    elif kind == "primes":
        ind[2:] = True
        for p in range(2, int(hi**0.5) + 1):
            if ind[p]:
                ind[p * p :: p] = False
    elif isinstance(kind, list):
        for lo, up in kind:
            ind[lo : min(up, hi) + 1] = True
    return ind


def prefix(ind, weight):
    w = np.zeros(len(ind))
    x = np.arange(1, len(ind), dtype=np.float64)
    w[1:] = np.where(ind[1:], weight(x), 0.0)
    return np.cumsum(w)


def g(P, n, H):
    K = (H + 1) // n
    k = np.arange(1, K + 1)
    s = P[k * n - 1] - P[k - 1]
    i = int(np.argmax(s))
    return float(s[i]), int(k[i])


def grid(n_max):
    out = []
    i = 0
    while True:
        v = round(2 * math.sqrt(2) ** i)
        if v > n_max:
            break
        if not out or v > out[-1]:
            out.append(v)
        i += 1
    if out[-1] != n_max:
        out.append(n_max)
    return out


def lbd(P, n_max, H):
    return min((g(P, n, H)[0] / math.log(n), n) for n in grid(n_max))


EX2 = [[2, 4], [65, 130], [2197001, 4394002]]

if __name__ == "__main__":
    H = 10**7
    sf = indicator("squarefree", H)
    c = np.cumsum(sf[1:])
    t = np.arange(1, H + 1)
    d = c / t
    print("squarefree count(1e7)/1e7 =", c[-1] / H, "count", c[-1])
    print("squarefree running min over t<=1e7 =", d.min(), "at t =", int(t[d.argmin()]))
    full6 = prefix(indicator("full", 10**6), lambda x: 1 / x)
    print("full log 1e6 =", full6[-1] / math.log(1e6))
    print("g full n=10 H=1e6 =", g(full6, 10, 10**6))
    iv = prefix(indicator([[100, 1000]], 10**4), lambda x: 1 / x)
    print("g [100,1000] n=10 H=1e4 =", g(iv, 10, 10**4))
    full7 = prefix(indicator("full", H), lambda x: 1 / x)
    print("lbd full n_max=1e3 H=1e7 =", lbd(full7, 1000, H))
    ex = prefix(indicator(EX2, H), lambda x: 1 / x)
    for nm in (10, 100, 1000):
        print("lbd example2 n_max=%d H=1e7 =" % nm, lbd(ex, nm, H))
    even6 = prefix(indicator("even", 10**6), lambda x: 1 / x)
    print("even log 1e6 =", even6[-1] / math.log(1e6))


def bdm_full(m, n, H):
    """max over blocks r of sum x^{-(m-1)/m} over [(r-1)^m+1, (r+n)^m] / (m n), via Hurwitz zeta."""
    import mpmath

    s = mpmath.mpf(m - 1) / m
    best = (0, 0)
    r = 1
    while (r + n) ** m <= H:
        lo, hi = (r - 1) ** m + 1, (r + n) ** m
        v = (mpmath.zeta(s, lo) - mpmath.zeta(s, hi + 1)) / (m * n)
        if v > best[0]:
            best = (v, lo)
        r += 1
    return float(best[0]), best[1]


if __name__ == "__main__":
    print("bdm full m=2 n=100 H=1e8 =", bdm_full(2, 100, 10**8))
