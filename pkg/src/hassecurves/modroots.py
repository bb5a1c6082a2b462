"""Square and cube roots modulo a prime.

Tonelli-Shanks for square roots; for cube roots the two residue classes of
the prime behave differently: when p = 2 (mod 3) cubing is a bijection and
the root is a single power, when p = 1 (mod 3) an Adleman-Manders-Miller
style descent runs in the 3-Sylow subgroup with a deterministically chosen
non-cube.
"""

from __future__ import annotations


def sqrt_mod(a: int, p: int) -> int | None:
    """A square root of a mod p, or None when a is a non-residue."""
    a %= p
    if p == 2 or a == 0:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def cube_roots_mod(a: int, p: int) -> list[int]:
    """All cube roots of a mod p, sorted; empty when a is not a cube."""
    a %= p
    if a == 0:
        return [0]
    if p == 3:
        return [a]  # cubing is the identity on F_3
    if p % 3 == 2:
        return [pow(a, (2 * p - 1) // 3, p)]
    if pow(a, (p - 1) // 3, p) != 1:
        return []
    # p = 1 (mod 3): write p - 1 = 3^s * q with 3 not dividing q
    q, s = p - 1, 0
    while q % 3 == 0:
        q //= 3
        s += 1
    z = 2
    while pow(z, (p - 1) // 3, p) == 1:
        z += 1
    g = pow(z, q, p)  # generates the 3-Sylow subgroup, order 3^s
    x = pow(a, pow(3, -1, q), p)
    err = pow(x, 3, p) * pow(a, -1, p) % p  # in the 3-Sylow subgroup
    # base-3 discrete log of err in <g>
    w = pow(g, 3 ** (s - 1), p)  # primitive cube root of unity
    k = 0
    for i in range(s):
        e = pow(err * pow(g, -k, p) % p, 3 ** (s - 1 - i), p)
        if e != 1:
            k += (1 if e == w else 2) * 3**i
    assert k % 3 == 0, "a passed the cube test, so its Sylow log is divisible by 3"
    x = x * pow(g, -(k // 3), p) % p
    assert pow(x, 3, p) == a
    omega = pow(z, (p - 1) // 3, p)
    return sorted({x, x * omega % p, x * omega * omega % p})
