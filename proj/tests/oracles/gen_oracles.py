#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# Independent reference values frozen into the unit tests. Uses mpmath at 50
# digits and plain Python integers; shares no code with the library.

import math
from fractions import Fraction

import mpmath as mp

mp.mp.dps = 50

FC = mp.mpf(3e9)
DF = mp.mpf(1e4)
C = mp.mpf(3e8)
D = mp.mpf(0.05)


def rad(deg):
    # Same double rounding as the library's degree conversion.
    return mp.mpf(deg * math.pi / 180.0)


def phase_exact(k, n, theta, r):
    rn = r - (n - 1) * D * mp.cos(theta)
    return 2 * mp.pi * (FC + k * DF) * rn / C - 2 * mp.pi * FC * r / C


def phase_approx(k, n, theta, r):
    return 2 * mp.pi * k * DF * r / C - 2 * mp.pi * FC * (n - 1) * D * mp.cos(theta) / C


def primes(count):
    out, x = [], 2
    while len(out) < count:
        if all(x % p for p in range(2, int(x ** 0.5) + 1)):
            out.append(x)
        x += 1
    return out


def gain_and_sinr(plan, bob, eve, phase, alpha1=mp.mpf("0.5"), ps=mp.mpf(10), noise=mp.mpf(1)):
    nt = len(plan)
    hb = [mp.expj(-phase(k, n + 1, *bob)) for n, k in enumerate(plan)]
    he = [mp.expj(-phase(k, n + 1, *eve)) for n, k in enumerate(plan)]
    v = [x / mp.sqrt(nt) for x in hb]
    g = mp.fsum(mp.conj(he[i]) * v[i] for i in range(nt))
    # Dense projector (I - hb hb^H / N_T) applied to he.
    proj = []
    for i in range(nt):
        acc = mp.mpc(0)
        for j in range(nt):
            pij = (1 if i == j else 0) - hb[i] * mp.conj(hb[j]) / nt
            acc += pij * he[j]
        proj.append(acc)
    ph2 = mp.fsum(abs(x) ** 2 for x in proj)
    signal = alpha1 * ps * abs(g) ** 2 / nt
    interference = (1 - alpha1) * ps * ph2 / (nt * (nt - 1))
    return abs(g) ** 2, signal / (interference + noise)


def mod_partition(seq, p):
    classes = [sorted(k for k in seq if k % p == r) for r in range(p)]
    return [k for cls in classes for k in cls]


def dense_interleave(seq, cols, rows):
    pad = rows * cols - len(seq)
    matrix = [[None] * cols for _ in range(rows)]
    flat = list(seq[: (rows - 1) * cols]) + [None] * pad + list(seq[(rows - 1) * cols:])
    for r in range(rows):
        for c in range(cols):
            matrix[r][c] = flat[r * cols + c]
    return [matrix[r][c] for c in range(cols) for r in range(rows) if matrix[r][c] is not None]


def variance(seq):
    sp = [Fraction(abs(a - b)) for a, b in zip(seq, seq[1:])]
    m = sum(sp) / len(sp)
    return sum((s - m) ** 2 for s in sp) / len(sp)


def log10_comb(m, k):
    return mp.log10(mp.mpf(math.comb(m, k)))


def main():
    theta60 = rad(60.0)
    print("steering_phase exact (k=7, n=2, 60 deg, 500 m):", mp.nstr(phase_exact(7, 2, theta60, mp.mpf(500)), 20))
    print("steering_phase approx (k=7, n=2, 60 deg, 500 m):", mp.nstr(phase_approx(7, 2, theta60, mp.mpf(500)), 20))

    plan = primes(120)
    bob = (theta60, mp.mpf(500))
    eve = (theta60, mp.mpf(600))
    g2, s = gain_and_sinr(plan, bob, eve, phase_exact)
    print("|g|^2 exact, eve (60, 600):", mp.nstr(g2, 20), " sinr:", mp.nstr(s, 20))
    g2, s = gain_and_sinr(plan, bob, eve, phase_approx)
    print("|g|^2 approx, eve (60, 600):", mp.nstr(g2, 20), " sinr:", mp.nstr(s, 20))
    eve2 = (rad(75.5), mp.mpf(432.5))
    g2, s = gain_and_sinr(plan, bob, eve2, phase_exact)
    print("|g|^2 exact, eve (75.5, 432.5):", mp.nstr(g2, 20), " sinr:", mp.nstr(s, 20))

    hphase = [0.3, 1.1, 2.0, -0.7]
    h = [mp.expj(-mp.mpf(a)) for a in hphase]
    z = [mp.mpc(0.5, -1.2), mp.mpc(0.3, 0.8), mp.mpc(-1.0, 0.25), mp.mpc(2.0, -0.4)]
    w = []
    for i in range(4):
        acc = mp.mpc(0)
        for j in range(4):
            acc += ((1 if i == j else 0) - h[i] * mp.conj(h[j]) / 4) * z[j]
        w.append(acc / mp.sqrt(3))
    print("an_vector w:", [(mp.nstr(x.real, 20), mp.nstr(x.imag, 20)) for x in w])
    print("an_vector |w|:", mp.nstr(mp.sqrt(mp.fsum(abs(x) ** 2 for x in w)), 20))

    k7 = mod_partition(plan, 7)
    out = dense_interleave(k7, 11, 11)
    print("mod7 head:", k7[:12])
    print("interleave 11x11:", out)
    print("metric of interleaved:", float(variance(out)), variance(out))
    print("metric of primes ascending:", float(variance(plan)))

    for m, k in [(4, 2), (128, 8), (31, 15), (200, 100), (1900, 120), (8192, 120), (1000, 16)]:
        print(f"log10 C({m},{k}) =", mp.nstr(log10_comb(m, k), 20))

    print("pi(999) =", sum(1 for x in range(2, 1000) if all(x % p for p in range(2, int(x ** 0.5) + 1))))
    print("pi(16383) =", sum(1 for x in range(2, 16384) if all(x % p for p in range(2, int(x ** 0.5) + 1))))


if __name__ == "__main__":
    main()
