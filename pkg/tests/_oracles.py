"""Independent arithmetic oracles used by the test suite.

These never touch the symbol-space machinery: elliptic trace counts are
brute-force point counts, and the discriminant-cusp-form coefficients come
from expanding the Jacobi product directly.
"""


def elliptic_ap(l):
    """l + 1 - #E(F_l) for E: y^2 + y = x^3 - x^2 - 10x - 20 (conductor 11)."""
    count = 1  # point at infinity
    for x in range(l):
        for y in range(l):
            if (y * y + y - (x**3 - x * x - 10 * x - 20)) % l == 0:
                count += 1
    return l + 1 - count


def delta_q_coefficients(nterms):
    """Coefficients tau(1), ..., tau(nterms) of q prod (1-q^n)^24."""
    # power series with integer coefficients up to q^(nterms-1) for the product
    prod = [0] * nterms
    prod[0] = 1
    for n in range(1, nterms):
        # multiply by (1 - q^n)^24
        factor = [0] * nterms
        factor[0] = 1
        base = [0] * nterms
        base[0] = 1
        if n < nterms:
            base[n] = -1
        for _ in range(24):
            factor = _series_mul(factor, base, nterms)
        prod = _series_mul(prod, factor, nterms)
    # Delta = q * prod
    return prod[: nterms]


def _series_mul(a, b, nterms):
    out = [0] * nterms
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if i + j >= nterms:
                break
            out[i + j] += ai * bj
    return out


def tau(n):
    coeffs = delta_q_coefficients(n)
    return coeffs[n - 1]
