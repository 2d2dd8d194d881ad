"""Reference values for tests/oracle_values.rs.

Closed forms are evaluated with mpmath at 40 digits straight from their
textbook expressions (no factoring, no stabilization). Inner minimizations
over eps' use a 10^5-point log grid followed by golden-section refinement at
full precision. The C-distance value comes from a truncated Fock-basis
Kraus computation that never touches covariance matrices.

Run: python3 bounds_oracle.py
"""

from math import comb, exp, log

import mpmath as mp
import numpy as np

mp.mp.dps = 40


def g(x):
    x = mp.mpf(x)
    if x == 0:
        return mp.mpf(0)
    return ((x + 1) * mp.log(x + 1) - x * mp.log(x)) / mp.log(2)


def h2(p):
    p = mp.mpf(p)
    if p == 0 or p == 1:
        return mp.mpf(0)
    return -(p * mp.log(p) + (1 - p) * mp.log(1 - p)) / mp.log(2)


def penalty(eps, ep, w, k):
    eps, ep, w = mp.mpf(eps), mp.mpf(ep), mp.mpf(w)
    d = (ep - eps) / (1 + ep)
    if d <= 0:
        return mp.inf
    return k * ((2 * ep + 4 * d) * g(w / d) + g(ep) + 2 * h2(d))


def golden(f, a, b, iters=200):
    phi = (mp.sqrt(5) - 1) / 2
    c, d = b - phi * (b - a), a + phi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + phi * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return x, f(x)


def min_penalty(eps, w, k):
    eps = mp.mpf(eps)
    lo = np.log10(1e-12)
    hi = float(mp.log10(1 - eps))
    offs = [mp.mpf(10) ** mp.mpf(t) for t in np.linspace(lo, hi, 100_000)]
    xs = [eps + o for o in offs]
    vals = [penalty(eps, x, w, k) for x in xs[::50]]
    i = 50 * int(np.argmin([float(v) for v in vals]))
    a = xs[max(i - 50, 0)]
    b = xs[min(i + 50, len(xs) - 1)]
    return golden(lambda x: penalty(eps, x, w, k), a, b)


def kappa(x, nb):
    x, nb = mp.mpf(x), mp.mpf(nb)
    return x * x + nb * (nb + 1) * (1 + 3 * x * x - 2 * x * (1 + mp.sqrt(2 * x - 1)))


def ql(eta, nb, ns):
    eta, nb, ns = mp.mpf(eta), mp.mpf(nb), mp.mpf(ns)
    d = mp.sqrt(((1 + eta) * ns + (1 - eta) * nb + 1) ** 2 - 4 * eta * ns * (ns + 1))
    return (
        g(eta * ns + (1 - eta) * nb)
        - g((d + (1 - eta) * ns - (1 - eta) * nb - 1) / 2)
        - g((d - (1 - eta) * ns + (1 - eta) * nb - 1) / 2)
    )


def ql_amp(G, nb, ns):
    G, nb, ns = mp.mpf(G), mp.mpf(nb), mp.mpf(ns)
    d = mp.sqrt(((1 + G) * ns + (G - 1) * (nb + 1) + 1) ** 2 - 4 * G * ns * (ns + 1))
    b = (G - 1) * (ns + nb + 1)
    return g(G * ns + (G - 1) * (nb + 1)) - g((d + b - 1) / 2) - g((d - b - 1) / 2)


def qu1_amp(G, nb, ns):
    G, nb, ns = mp.mpf(G), mp.mpf(nb), mp.mpf(ns)
    gp = G / (1 + nb * (1 - G))
    return g(gp * ns + gp - 1) - g((gp - 1) * (ns + 1))


def qu4_thermal(eta, nb, ns):
    eta, nb, ns = mp.mpf(eta), mp.mpf(nb), mp.mpf(ns)
    ep = eta - (1 - eta) * nb
    out = eta * ns + (1 - eta) * nb
    return g(out) - g((1 / ep - 1) * out)


def zeta_thermal(eta, nb, ns):
    eta, nb, ns = mp.mpf(eta), mp.mpf(nb), mp.mpf(ns)
    rho = 4 * nb * (nb + 1) * (2 * eta - 1) / eta
    th = eta * nb + (1 - eta) * ns
    r = mp.sqrt((1 + nb + th) ** 2 - rho)
    base = (1 + 2 * nb) ** 2 - 2 * rho + (1 + 2 * th) ** 2
    return [(-1 + mp.sqrt((base + s * 4 * (th - nb) * r) / 2)) / 2 for s in (1, -1)]


def ud_thermal(eta, nb, ns):
    zp, zm = zeta_thermal(eta, nb, ns)
    return g(mp.mpf(eta) * ns + (1 - mp.mpf(eta)) * nb) - g(zp) - g(zm)


def qu2_thermal(eta, nb, ns, k=1):
    eps = mp.sqrt(1 - mp.mpf(eta) ** 2 / kappa(eta, nb))
    w = (1 - mp.mpf(eta)) * ns + (1 + mp.mpf(eta)) * nb
    ep, pen = min_penalty(eps, w, k)
    return ud_thermal(eta, nb, ns) + pen, ep


def qu3_thermal(eta, nb, ns, k=2):
    eta = mp.mpf(eta)
    eps = mp.mpf(nb) / (nb + 1)
    w = eta * ns + (1 - eta) * nb
    ep, pen = min_penalty(eps, w, k)
    return g(eta * ns) - g((1 - eta) * ns) + pen, ep


# Fock-basis fidelity between (id x L_{eta,nb1})(TMS) and (id x L_{eta,nb2})(TMS).
# L_{eta,nb} = A_{G,0} o L_{eta/G,0} with G = (1-eta) nb + 1, so each output
# is sum_{k,j} (1 x A_j K_k)|psi><psi|(...)^dag. Kraus outputs with equal
# photon-number difference D = n_R - n_B share a block; F = (sum_D ||A_D^T B_D||_1)^2.


def loss_kraus(eta, k, n):
    if k > n:
        return 0.0
    return exp(0.5 * (log(comb(n, k)) + (n - k) * log(eta) + (k * log(1 - eta) if k > 0 else 0)))


def amp_kraus(G, j, n):
    return exp(0.5 * (log(comb(n + j, j)) - (n + 1) * log(G) + (j * log(1 - 1 / G) if j > 0 else 0)))


def fock_blocks(ns, eta, nb, nmax):
    G = (1 - eta) * nb + 1
    ep = eta / G
    c = np.array([exp(0.5 * (n * log(ns / (ns + 1)) - log(ns + 1))) for n in range(nmax)])
    out = {}
    jr = range(nmax) if G > 1 else [0]
    for k in range(nmax):
        for j in jr:
            v = np.zeros(nmax)
            for n in range(k, nmax):
                v[n] = c[n] * loss_kraus(ep, k, n) * (amp_kraus(G, j, n - k) if G > 1 else 1.0)
            if np.max(np.abs(v)) < 1e-30:
                if j > k + 5:
                    break
                continue
            out.setdefault(k - j, []).append(v)
    return {d: np.array(vs).T for d, vs in out.items()}


def fock_fidelity(ns, eta, nb1, nb2, nmax=140):
    b1, b2 = fock_blocks(ns, eta, nb1, nmax), fock_blocks(ns, eta, nb2, nmax)
    s = 0.0
    for d in set(b1) & set(b2):
        s += np.linalg.svd(b1[d].T @ b2[d], compute_uv=False).sum()
    return s * s


def fmt(x):
    return mp.nstr(x, 17)


if __name__ == "__main__":
    print("g(0.5)               ", fmt(g(0.5)))
    print("h2(0.11)             ", fmt(h2(0.11)))
    print("penalty(.1,.3,5,1)   ", fmt(penalty(0.1, 0.3, 5, 1)))
    print("QL(.7,.2,4)          ", fmt(ql(0.7, 0.2, 4)))
    print("QLamp(1.5,.3,8)      ", fmt(ql_amp(1.5, 0.3, 8)))
    print("QU1amp(2,.5,10)      ", fmt(qu1_amp(2, 0.5, 10)))
    print("QU4(.6,.4,3)         ", fmt(qu4_thermal(0.6, 0.4, 3)))
    print("UD(.8,.3,2)          ", fmt(ud_thermal(0.8, 0.3, 2)))
    v, ep = qu2_thermal(0.75, 0.2, 5)
    print("QU2(.75,.2,5)        ", fmt(v), "eps'", fmt(ep))
    v, ep = qu3_thermal(0.75, 0.1, 5)
    print("QU3(.75,.1,5)        ", fmt(v), "eps'", fmt(ep))
    v, ep = qu3_thermal(0.7, 0.2, 5, k=4)
    print("PU3(.7,.2,5)         ", fmt(v), "eps'", fmt(ep))
    f = fock_fidelity(2.0, 0.8, 0.3, 0.1)
    print("Cdist(.8;.3,.1;NS=2) ", repr(float(np.sqrt(1 - f))), "F", repr(f))
