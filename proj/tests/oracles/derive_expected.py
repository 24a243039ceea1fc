"""Independent oracles for the frozen expected values in the C++ tests.

Uses mpmath / scipy only; nothing here calls into the library. Run:
    python3 tests/oracles/derive_expected.py
"""
import mpmath as mp
import numpy as np
from scipy import stats

mp.mp.dps = 30


def stable_cdf_scipy(alpha, c, x):
    # S1 parameterization with beta=0: cf exp(-|scale t|^alpha).
    return stats.levy_stable.cdf(x, alpha, 0.0, loc=0.0, scale=c ** (1.0 / alpha))


def stable_cdf_mp(alpha, c, x):
    # Gil-Pelaez inversion, integrated to infinity with mpmath oscillatory quadrature.
    f = lambda t: mp.sin(t * x) / t * mp.exp(-c * t ** alpha)
    return mp.mpf(1) / 2 + mp.quadosc(f, [0, mp.inf], omega=abs(x)) / mp.pi


def pareto_K(alpha):
    f = lambda u: 2 * mp.sin(u / 2) ** 2 * u ** (-alpha - 1)
    g = lambda u: mp.cos(u) * u ** (-alpha - 1)
    tail = 1 / alpha - mp.quadosc(g, [1, mp.inf], omega=1)
    return alpha * (mp.quad(f, [0, 1]) + tail)


def pareto_beta(alpha, c, t):
    s = (c / pareto_K(alpha)) ** (1 / alpha)
    L = abs(t) * s
    f = lambda u: 2 * mp.sin(u / 2) ** 2 * u ** (-alpha - 1)
    return alpha * s ** alpha * mp.quad(f, [0, L])


def beta_pure(alpha, c, t):
    ta = abs(t) ** alpha
    return (mp.exp(-c * ta) - 1 + c * ta) / ta


def beta_noise(alpha, c, eps, t):
    ta = abs(t) ** alpha
    y = eps * t
    return (mp.exp(-c * ta) * mp.sin(y) / y - 1 + c * ta) / ta


def dense_rho_pure_vs_noise(alpha, c, eps, M, nodes):
    def gap(t):
        if t == 0:
            return 0.0
        return float(abs(beta_pure(alpha, c, mp.mpf(t)) - beta_noise(alpha, c, eps, mp.mpf(t))))
    total = max(gap(t) for t in np.linspace(0.0, 1.0, nodes))
    for k in range(M):
        lo = 2.0 ** k
        total += 2.0 ** -k * max(gap(t) for t in np.linspace(lo, 2 * lo, nodes))
    return total


if __name__ == "__main__":
    print("stable cdf, alpha=1 c=1 x=1:", stable_cdf_mp(1, 1, 1))
    for a, c, x in [(1.5, 1.0, 1.0), (0.7, 0.5, 0.3), (0.7, 0.5, 50.0), (1.5, 1.0, 200.0),
                    (1.2, 2.0, -0.8), (0.5, 1.0, 1e4)]:
        print(f"stable cdf alpha={a} c={c} x={x}: mp={stable_cdf_mp(a, c, x)} scipy={stable_cdf_scipy(a, c, x)!r}")
    print("K(1) =", pareto_K(1), " pi/2 =", mp.pi / 2)
    print("s(1,1) =", (1 / pareto_K(1)), " 2/pi =", 2 / mp.pi)
    for a in (0.5, 1.2, 1.7):
        print(f"K({a}) =", pareto_K(a), " Gamma(1-a)cos(pi a/2) =", mp.gamma(1 - a) * mp.cos(mp.pi * a / 2))
    print("pareto beta(1,1, 2^-10) =", pareto_beta(1, 1, mp.mpf(2) ** -10))
    for t in (0.5, 3.0, 50.0, 500.0):
        print(f"pareto beta(1.2,1,{t}) =", pareto_beta(1.2, 1, mp.mpf(t)))
    mp.mp.dps = 20
    for a in (0.5, 1.2, 1.7):
        print(f"pareto s({a}, c=1) =", (1 / pareto_K(a)) ** (1 / a))
    print("rho pure vs noise(0.5), alpha=1 c=1, dense 4096, M=24:",
          dense_rho_pure_vs_noise(1, 1, 0.5, 24, 4096))
    mp.mp.dps = 30
    # Lemma-1 example: alpha=1.2, c=1, PureStable vs NoiseConvolved(0.5), constant N=64, t=1.
    a, c, N, t, eps = mp.mpf("1.2"), 1, 64, 1, mp.mpf("0.5")
    A = mp.mpf(N) ** (1 / a)
    x = t / A
    p1 = mp.exp(-c * N * x ** a)
    p2 = (mp.exp(-c * x ** a) * mp.sin(eps * x) / (eps * x)) ** N
    print("lemma1 lhs (1.2, N=64, t=1) =", abs(p1 - p2), " delta =", 1 / A)
    # refined bound: |t|^a * sup_{|x|<=delta} |beta1-beta2|; the gap is increasing on [0, delta]
    print("lemma1 refined rhs =", abs(beta_pure(a, c, x) - beta_noise(a, c, eps, x)))
