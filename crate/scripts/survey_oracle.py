"""Independent oracle for `solgenus survey --format csv`.

Class numbers come from the analytic class number formula and the
conductor formula for orders, not from form reduction, so agreement with
the Rust output is a genuine cross-check.

    python3 scripts/survey_oracle.py 20 > /tmp/oracle.csv
"""

import math
import sys
from fractions import Fraction


def kronecker(d, n):
    """Kronecker symbol (d/n) for n >= 1."""
    result = 1
    while n % 2 == 0:
        n //= 2
        if d % 2 == 0:
            return 0
        if d % 8 in (3, 5):
            result = -result
    # Jacobi symbol (d/n), n odd
    a, m = d % n, n
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                result = -result
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            result = -result
        a %= m
    return result if m == 1 else 0


def squarefree_split(n):
    """n = s^2 * d with d squarefree (sign kept in d)."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    s, d, p = 1, 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            s *= p
        if n % p == 0:
            n //= p
            d *= p
        p += 1
    return s, sign * d * n


def fundamental(D):
    s, d = squarefree_split(D)
    if d % 4 == 1:
        return d, s
    return 4 * d, s // 2


def primes_dividing(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def fundamental_unit(D0):
    """Smallest (x, y) > 0 with x^2 - D0 y^2 = ±4, i.e. eps = (x + y sqrt D0)/2."""
    y = 1
    while True:
        for sgn in (-4, 4):
            x2 = D0 * y * y + sgn
            if x2 > 0:
                x = math.isqrt(x2)
                if x * x == x2:
                    return x, y
        y += 1


def unit_index(D0, f):
    """Least k with eps^k in Z + f O_K."""
    x, y = fundamental_unit(D0)
    cx, cy, k = x, y, 1
    while cy % f:
        # (cx + cy s)/2 * (x + y s)/2 with s^2 = D0
        cx, cy = (cx * x + cy * y * D0) // 2, (cx * y + cy * x) // 2
        k += 1
    return k


def h_fundamental(D0):
    if D0 < 0:
        w = {-3: 6, -4: 4}.get(D0, 2)
        total = sum(kronecker(D0, a) * a for a in range(1, -D0))
        return round(-w * total / (2 * -D0))
    x, y = fundamental_unit(D0)
    log_eps = math.log((x + y * math.sqrt(D0)) / 2)
    s = sum(kronecker(D0, a) * math.log(math.sin(math.pi * a / D0)) for a in range(1, D0))
    return round(-s / (2 * log_eps))


def h_order(D):
    D0, f = fundamental(D)
    h = Fraction(h_fundamental(D0) * f)
    for p in primes_dividing(f):
        h *= 1 - Fraction(kronecker(D0, p), p)
    if D0 < 0:
        w0 = {-3: 6, -4: 4}.get(D0, 2)
        index = w0 // 2 if f > 1 else 1
    else:
        index = unit_index(D0, f)
    h /= index
    assert h.denominator == 1, (D, h)
    return int(h)


def row(t, n):
    D = t * t - 4 * n
    finite = (t, n) in {(0, 1), (0, -1), (1, 1), (-1, 1)}
    if abs(t) > 2 or (n == -1 and t != 0):
        geometry = "Sol"
    elif finite:
        geometry = "Euclidean"
    else:
        geometry = "Nil"
    if t == 0:
        branch = "TraceZero"
    elif D == 0:
        branch = "RepeatedOne" if t > 0 else "RepeatedMinusOne"
    else:
        branch = "MainQuadratic"
    if D == 0:
        D0 = f = h_ord = ""
        h_field = 1
    elif D == 4:
        D0, f, h_ord, h_field = 1, 2, "", 1
    else:
        D0, f = fundamental(D)
        h_field, h_ord = h_fundamental(D0), h_order(D)
    genus = h_field if branch == "MainQuadratic" else 1
    rigid = "true" if genus == 1 else "false"
    return [t, n, D, D0, f, geometry, branch, h_field, h_ord, genus, rigid]


def main():
    tmax = int(sys.argv[1]) if len(sys.argv) > 1 else 10
    print("t,n,D,D0,f,geometry,branch,h_field,h_order,genus,rigid")
    for t in range(-tmax, tmax + 1):
        for n in (-1, 1):
            print(",".join(str(c) for c in row(t, n)))


if __name__ == "__main__":
    main()
