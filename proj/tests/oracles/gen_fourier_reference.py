"""High-precision reference transforms for the bump weights.

Prints a C++ header with reference values of the transform of the second box
weight (alpha2 = 1, k = 3 constants) on a log grid, and of the symmetric bump
at frequencies around the peak of xi^10 |w0^(xi)|.
"""
import mpmath as mp

mp.mp.dps = 40


def step(u):
    if u <= 0:
        return mp.mpf(0)
    if u >= 1:
        return mp.mpf(1)
    return 1 / (1 + mp.e ** (1 / u - 1 / (1 - u)))


def profile_transform(w):
    w = mp.mpf(w)
    n = max(32, int(abs(w) / 2) + 1)
    pts = [mp.mpf(i) / n for i in range(n + 1)]
    return mp.quad(lambda u: step(u) * mp.expj(-w * u), pts)


def bump_transform(sl, pl, ph, sh, xi):
    sl, pl, ph, sh, xi = map(mp.mpf, (sl, pl, ph, sh, xi))
    w = ph - pl
    m = (ph + pl) / 2
    arg = xi * w / 2
    sinc = mp.sin(arg) / arg if arg != 0 else mp.mpf(1)
    plateau = w * sinc * mp.expj(-xi * m)
    lr = pl - sl
    lf = sh - ph
    rise = lr * mp.expj(-xi * sl) * profile_transform(xi * lr)
    fall = lf * mp.expj(-xi * sh) * profile_transform(-xi * lf)
    return plateau + rise + fall


def main():
    b2 = mp.mpf("0.2")
    a2 = b2 / 2
    geo2 = (a2 / 4, a2 / 2, 3 * b2 / 4, b2)
    grid = [mp.mpf(10) ** (mp.mpf(j) / 4) for j in range(0, 17)]
    print("#pragma once")
    print("// Generated by tests/oracles/gen_fourier_reference.py (mpmath, 40 digits).")
    print("#include <array>")
    print()
    print("namespace terndio::fixtures {")
    print()
    print("struct FourierRef {")
    print("  double xi;")
    print("  double re;")
    print("  double im;")
    print("};")
    print()
    print("// Second box weight for alpha2 = 1, k = 3: support [0.025, 0.2], plateau [0.05, 0.15].")
    print(f"inline constexpr std::array<FourierRef, {len(grid)}> kWeight2Transform = {{{{")
    for xi in grid:
        v = bump_transform(*geo2, xi)
        print(f"    {{{mp.nstr(xi, 20)}, {mp.nstr(v.real, 20)}, {mp.nstr(v.imag, 20)}}},")
    print("}};")
    print()
    sym = [50, 100, 150, 200, 250, 300, 400, 600, 800, 1200]
    print("// Symmetric bump (plateau [-1, 1], support [-2, 2]); the transform is real.")
    print(f"inline constexpr std::array<FourierRef, {len(sym)}> kSymmetricTransform = {{{{")
    for xi in sym:
        v = bump_transform(-2, -1, 1, 2, xi)
        print(f"    {{{xi}.0, {mp.nstr(v.real, 20)}, 0.0}},")
    print("}};")
    print()
    print("}  // namespace terndio::fixtures")


if __name__ == "__main__":
    main()
