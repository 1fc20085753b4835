"""Independent high-precision oracle values, frozen into tests/oracle_values.hpp.

Run: python3 tests/oracles/gen_oracles.py > tests/oracle_values.hpp
"""
import mpmath as mp

mp.mp.dps = 40
pi = mp.pi


def sq(t):
    return mp.sqrt(mp.mpc(t))


def ssw(k, lam):
    t = (k - 4) ** 2 - 8 * k * lam
    return mp.re(mp.cos(pi * (k - 4) / k) / mp.cos(pi / k * sq(t)))


def touch(k, lam):
    t = (k - 4) ** 2 - 8 * k * lam
    s = sq(t)
    return mp.re(2 * mp.cos(pi * (k - 4) / k) * mp.sin(pi * (k - 4) / (4 * k) * s) / mp.sin(pi / 4 * s))


def nontouch(k, lam):
    t = (k - 4) ** 2 - 8 * k * lam
    s = sq(t)
    return mp.re(mp.cos(pi * (k - 4) / k) * mp.sin(pi * (8 - k) / (4 * k) * s) / mp.sin(pi / 4 * s) / mp.cos(pi / k * s))


def wtd(k, lam):
    t = (k - 4) ** 2 - 8 * k * lam
    s = sq(t)
    return mp.re(mp.sin(pi * (8 - k) / (4 * k) * s) / mp.sin(pi / 4 * s))


def p_touch(k):
    return 1 - mp.sin(pi * (k / 4 + 8 / k)) / mp.sin(pi * (k - 4) / 4)


def kappa0():
    return mp.findroot(lambda x: mp.diff(p_touch, x), 6.95)


def root_np(k, a):
    top = 1 - k / 8
    return mp.findroot(lambda x: wtd(k, -x) - 1 / a, (mp.mpf(-3), top - mp.mpf("1e-12")), solver="anderson")


def root_nl(k, a):
    top = 1 - 2 / k - 3 * k / 32
    return mp.findroot(lambda x: ssw(k, -x) - 1 / a, (mp.mpf(-3), top - mp.mpf("1e-12")), solver="anderson")


def levy_closed(k, p, l1, l2):
    g2 = mp.mpf(16) / k
    w = 4 * p / g2
    z = mp.exp(1j * pi * g2 / 8) * l1 + mp.exp(-1j * pi * g2 / 8) * l2
    return 4 / (pi * g2) * mp.gamma(-w) * mp.gamma(p + 1) * mp.re(mp.exp(1j * pi * (p + 1) / 2) * mp.power(z, w))


def scale_upper(k, psi0, d):
    e = -2 * (k - 4) / k
    f = lambda y: mp.sin(y / 2) ** e
    num = mp.quad(f, [d, min(psi0, pi), psi0] if psi0 > pi else [d, psi0])
    den = 2 * mp.quad(f, [d, pi])
    return num / den


def mean_exit_time(k, psi0, d):
    e = -2 * (k - 4) / k
    sp = lambda y: mp.sin(y / 2) ** e
    a, b = mp.mpf(d), 2 * pi - d
    s = lambda y: mp.quad(sp, [a, y])
    S = 2 * mp.quad(sp, [a, pi])
    sx = s(psi0)
    m = lambda y: 2 / (k * sp(y))
    f1 = mp.quad(lambda y: s(y) * m(y), [a, psi0]) * (S - sx) / S
    f2 = mp.quad(lambda y: (S - s(y)) * m(y), [psi0, b]) * sx / S
    return f1 + f2


def fmt(x):
    return mp.nstr(mp.mpf(x), 20, strip_zeros=False)


def row(*vals):
    return "{" + ", ".join(fmt(v) if not isinstance(v, str) else v for v in vals) + "}"


out = []
out.append("// Generated by tests/oracles/gen_oracles.py (mpmath, 40 digits). Do not edit.")
out.append("#pragma once\n")
out.append("namespace oracle {\n")
out.append("struct Moment {\n    double kappa, lambda, ssw, touch, nontouch, wtd;\n};")
rows = []
for k in [mp.mpf(9) / 2, mp.mpf(5), mp.mpf(16) / 3, mp.mpf(6), mp.mpf(7), mp.mpf(15) / 2, mp.mpf("7.9")]:
    for lam in [mp.mpf("-0.05"), mp.mpf(0), mp.mpf("0.2"), mp.mpf(1), mp.mpf(3)]:
        if lam <= max(3 * k / 32 + 2 / k - 1, k / 8 - 1):
            continue
        rows.append(row(k, lam, ssw(k, lam), touch(k, lam), nontouch(k, lam), wtd(k, lam)))
out.append("inline constexpr Moment kMoments[] = {\n    " + ",\n    ".join(rows) + "};\n")
out.append("struct Prob {\n    double kappa, p_touch;\n};")
rows = [row(k, p_touch(k)) for k in [mp.mpf("4.2"), mp.mpf(5), mp.mpf(16) / 3, mp.mpf(6), mp.mpf(7), mp.mpf("7.8")]]
out.append("inline constexpr Prob kTouch[] = {\n    " + ",\n    ".join(rows) + "};\n")
out.append("inline constexpr double kKappa0 = " + fmt(kappa0()) + ";\n")
out.append("struct Root {\n    double kappa, a, np, nl;\n};")
rows = []
for k in [mp.mpf(9) / 2, mp.mpf(16) / 3, mp.mpf(6), mp.mpf(7), mp.mpf(15) / 2]:
    for a in [mp.mpf("0.3"), mp.mpf("0.7"), mp.mpf(1), mp.mpf("1.5"), mp.mpf(3)]:
        rows.append(row(k, a, root_np(k, a), root_nl(k, a)))
out.append("inline constexpr Root kRoots[] = {\n    " + ",\n    ".join(rows) + "};\n")
out.append("struct Levy {\n    double kappa, p, l1, l2, closed;\n};")
rows = []
for (k, p, l1, l2) in [(6, "-0.3", 1, 1), (6, "-0.2", 1, 2), (mp.mpf(16) / 3, "-0.4", 2, 1), (7, "-0.25", "0.5", "1.5"),
                       (mp.mpf("4.5"), "-0.1", 3, 1)]:
    k, p, l1, l2 = mp.mpf(k), mp.mpf(p), mp.mpf(l1), mp.mpf(l2)
    rows.append(row(k, p, l1, l2, levy_closed(k, p, l1, l2)))
out.append("inline constexpr Levy kLevy[] = {\n    " + ",\n    ".join(rows) + "};\n")
out.append("struct Scale {\n    double kappa, psi0, delta, upper;\n};")
rows = []
for (k, psi0) in [(6, 2 * pi / 3), (mp.mpf("7.5"), 2 * pi / 3), (mp.mpf("4.5"), 2 * pi / 3), (6, 4), (mp.mpf(16) / 3, 1)]:
    rows.append(row(mp.mpf(k), psi0, mp.mpf("1e-5"), scale_upper(mp.mpf(k), psi0, mp.mpf("1e-5"))))
out.append("inline constexpr Scale kScale[] = {\n    " + ",\n    ".join(rows) + "};\n")
out.append("// Mean exit time of the angular gap from (1e-5, 2 pi - 1e-5), Green's function quadrature.")
out.append("inline constexpr double kMeanExitKappa6 = " + fmt(mean_exit_time(mp.mpf(6), 2 * pi / 3, mp.mpf("1e-5"))) + ";\n")
out.append("}  // namespace oracle")
print("\n".join(out))
