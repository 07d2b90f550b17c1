"""Reference values for the monad tests, from mpmath harmonic and Hurwitz zeta sums."""
import mpmath

mpmath.mp.dps = 40


def H(a, b):
    """sum of 1/x for x in [a, b]."""
    return mpmath.harmonic(b) - mpmath.harmonic(a - 1)


def P(a, b, s):
    """sum of x^-s for x in [a, b]."""
    return mpmath.zeta(s, a) - mpmath.zeta(s, b + 1)


ln = mpmath.log
print("nu (1,1e6) [10,100] =", H(10, 100) / ln(10**6))
print("nu (1e3,1e6) full =", H(10**3, 10**9) / ln(10**6))
print("nu (1e3,1e12) [k, k 1e6] =", H(10**3, 10**9) / ln(10**12))
print("nu (1,1e12) [1e3,1e4] =", H(10**3, 10**4) / ln(10**12))
print("nu (1,1e12) [1e8,1e9] =", H(10**8, 10**9) / ln(10**12))
print("scale (1,1e12) [1e3,1e6] s=1e3:", H(10**3, 10**6) / ln(10**12), H(10**6, 10**9) / ln(10**12))
print("scale (1,1e6) [10,1e3] s=7:", H(10, 1000) / ln(10**6), H(70, 7000) / ln(10**6))
a = 10**4
b = 25 * 10**3
N = 10**12
print("inv [1e4,2.5e4]:", H(a, b) / ln(N), H(N // b, N // a) / ln(N))
print("nu_m m=2 Nroot=1e3 [1e4,1e6] =", P(10**4, 10**6, mpmath.mpf(1) / 2) / (2 * 1000))
