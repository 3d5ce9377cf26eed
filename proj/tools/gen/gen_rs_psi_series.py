#!/usr/bin/env python3
"""Emit Taylor coefficients of Psi(1/2 + x) = -cos(2 pi x^2 - 5 pi/8) / cos(2 pi x).

Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p) is the Riemann-Siegel
remainder kernel; it is entire, so the series converges on |x| <= 1/2.
Output is a C++ initializer list written to stdout.
"""
import mpmath as mp

mp.mp.dps = 200
DEGREE = 90


def main():
    n = DEGREE + 1
    two_pi = 2 * mp.pi
    # denominator: cos(2 pi x)
    den = [mp.mpf(0)] * n
    for j in range(0, n // 2 + 1):
        if 2 * j < n:
            den[2 * j] = (-1) ** j * two_pi ** (2 * j) / mp.factorial(2 * j)
    # numerator: cos(5pi/8) cos(2 pi x^2) + sin(5pi/8) sin(2 pi x^2), negated
    c, s = mp.cos(5 * mp.pi / 8), mp.sin(5 * mp.pi / 8)
    num = [mp.mpf(0)] * n
    for j in range(0, n):
        deg = 2 * j
        if deg >= n:
            break
        term = two_pi ** j / mp.factorial(j)
        if j % 2 == 0:
            num[deg] += c * (-1) ** (j // 2) * term
        else:
            num[deg] += s * (-1) ** (j // 2) * term
    num = [-v for v in num]
    # series division num / den
    q = [mp.mpf(0)] * n
    for m in range(n):
        acc = num[m]
        for j in range(1, m + 1):
            acc -= den[j] * q[m - j]
        q[m] = acc / den[0]
    # spot check against direct evaluation
    for p in (mp.mpf("0.1"), mp.mpf("0.3"), mp.mpf("0.9")):
        direct = mp.cos(2 * mp.pi * (p * p - p - mp.mpf(1) / 16)) / mp.cos(2 * mp.pi * p)
        x = p - mp.mpf("0.5")
        series = sum(q[i] * x ** i for i in range(n))
        assert abs(direct - series) < mp.mpf("1e-30"), (p, direct, series)
    print("// Generated by tools/gen/gen_rs_psi_series.py; do not edit.")
    print(f"constexpr std::array<double, {n}> kPsiTaylor = {{")
    for v in q:
        print(f"    {mp.nstr(v, 20, min_fixed=0, max_fixed=0)},")
    print("};")


if __name__ == "__main__":
    main()
