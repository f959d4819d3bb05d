"""Independent reference computations used to freeze expected values.

Nothing here imports the package; everything is naive dense arithmetic.
"""

from fractions import Fraction


def pmul(a, b, n):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        for j, y in enumerate(b[: n - i]):
            out[i + j] += x * y
    return out


def ppow(a, k, n):
    out = [1] + [0] * (n - 1)
    for _ in range(k):
        out = pmul(out, a, n)
    return out


def pinv(a, n):
    w = [Fraction(0)] * n
    w[0] = Fraction(1, a[0])
    for k in range(1, n):
        w[k] = -sum(a[j] * w[k - j] for j in range(1, min(k, len(a) - 1) + 1)) / a[0]
    return w


def euler_product(n, power=1):
    """prod_{m>=1} (1 - q^m)^power to n terms, by repeated multiplication."""
    out = [1] + [0] * (n - 1)
    for m in range(1, n):
        f = [0] * n
        f[0] = 1
        f[m] = -1
        out = ppow_into(out, f, power, n)
    return out


def ppow_into(acc, f, power, n):
    for _ in range(power):
        acc = pmul(acc, f, n)
    return acc


def tau(n_terms):
    """Ramanujan tau(1..n_terms-1) from q prod (1-q^m)^24."""
    p = euler_product(n_terms, 24)
    return [0] + p[: n_terms - 1]


def sigma(k, n):
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def phi_minus2_1_oracle(nmax):
    """theta1(z)^2 / eta^6 by brute double sums; returns {(n, r): c}."""
    N = nmax + 1
    # theta1^2 / q^(1/4): sum over odd a, b of (+-) q^((a^2+b^2-2)/8) zeta^((a+b)/2)
    sq = {}
    for i in range(-8, 8):
        for j in range(-8, 8):
            a, b = 2 * i + 1, 2 * j + 1
            e = (a * a + b * b - 2) // 8
            if e >= N:
                continue
            sgn = (-1) ** (i + j)
            key = (e, (a + b) // 2)
            sq[key] = sq.get(key, 0) + sgn
    inv = pinv(euler_product(N, 6), N)
    out = {}
    for (e, r), c in sq.items():
        for j in range(N - e):
            out[(e + j, r)] = out.get((e + j, r), 0) + c * inv[j]
    return {k: int(v) for k, v in out.items() if v}


def jacobi_convolve(a, b, nmax):
    out = {}
    for (n1, r1), x in a.items():
        for (n2, r2), y in b.items():
            if n1 + n2 <= nmax:
                k = (n1 + n2, r1 + r2)
                out[k] = out.get(k, 0) + x * y
    return {k: v for k, v in out.items() if v}


def dim_cusp_by_monomials(k):
    """Count (a, b) with 4a + 6b = k, minus one (the dimension of M_k minus Eisenstein)."""
    if k < 4 or k % 2:
        return 0
    count = sum(1 for b in range(k // 6 + 1) if (k - 6 * b) % 4 == 0)
    return count - 1
