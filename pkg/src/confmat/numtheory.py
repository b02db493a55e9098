"""Integer helpers: primality, factorization, prime powers, sums of two squares."""

from __future__ import annotations

# Deterministic Miller-Rabin bases for n < 3.3e24, which covers 64-bit input.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (intended for n up to ~2**40)."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def iroot(n: int, k: int) -> int:
    """Largest integer r with r**k <= n."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2:
        return n
    r = int(round(n ** (1.0 / k)))
    while r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, alpha)`` with ``n == p**alpha`` and p prime, else None.

    Extracts the largest perfect power first, so only one primality test is
    needed on the base.
    """
    if n < 2:
        return None
    for k in range(n.bit_length(), 0, -1):
        r = iroot(n, k)
        if r >= 2 and r**k == n and is_prime(r):
            return r, k
    return None


def is_sum_of_two_squares(n: int) -> bool:
    """Fermat's criterion: no prime 3 mod 4 divides n to an odd power."""
    if n < 0:
        return False
    if n == 0:
        return True
    return all(e % 2 == 0 for p, e in factorize(n).items() if p % 4 == 3)


def two_squares(n: int) -> tuple[int, int] | None:
    """An explicit decomposition ``n = a*a + b*b`` with ``0 <= a <= b``, or None."""
    a = 0
    while 2 * a * a <= n:
        b = iroot(n - a * a, 2)
        if b * b == n - a * a:
            return a, b
        a += 1
    return None
