"""Pure-Python character-sum kernel (fallback for the compiled one).

Both backends share one calling convention: field elements are integer
indices ``c0 + c1*p``; ``coeffs`` holds six integers per t index
``(c2_0, c2_1, c1_0, c1_1, c0_0, c0_1)`` for the cubic
``x^3 + c2 x^2 + c1 x + c0``; ``chi`` maps an element index to -1, 0, 1.
"""


def char_sum(p, n, d, chi, coeffs, t_lo, t_hi):
    """Sum of chi(x^3 + c2(t) x^2 + c1(t) x + c0(t)) over all x and t in [t_lo, t_hi)."""
    if n == 1:
        return _sum_prime(p, chi, coeffs, t_lo, t_hi)
    if n == 2:
        return _sum_quadratic(p, d, chi, coeffs, t_lo, t_hi)
    raise ValueError("kernel supports extension degree 1 or 2")


def _sum_prime(p, chi, coeffs, t_lo, t_hi):
    xs = range(p)
    pts = [(x, x * x % p, x * x * x % p) for x in xs]
    total = 0
    for j in range(t_lo, t_hi):
        c2 = coeffs[6 * j]
        c1 = coeffs[6 * j + 2]
        c0 = coeffs[6 * j + 4]
        total += sum([chi[(x3 + c2 * x2 + c1 * x + c0) % p] for x, x2, x3 in pts])
    return total


def _sum_quadratic(p, d, chi, coeffs, t_lo, t_hi):
    pts = []
    for i in range(p * p):
        x0, x1 = i % p, i // p
        s0, s1 = (x0 * x0 + d * x1 * x1) % p, (2 * x0 * x1) % p
        k0, k1 = (s0 * x0 + d * s1 * x1) % p, (s0 * x1 + s1 * x0) % p
        pts.append((x0, x1, s0, s1, k0, k1))
    total = 0
    for j in range(t_lo, t_hi):
        a0, a1, b0, b1, e0, e1 = coeffs[6 * j: 6 * j + 6]
        da1, db1 = d * a1, d * b1
        total += sum([
            chi[(k0 + a0 * s0 + da1 * s1 + b0 * x0 + db1 * x1 + e0) % p
                + p * ((k1 + a0 * s1 + a1 * s0 + b0 * x1 + b1 * x0 + e1) % p)]
            for x0, x1, s0, s1, k0, k1 in pts
        ])
    return total
