"""Small number-theoretic helpers."""

from __future__ import annotations

from sympy import factorint, isprime


def is_prime(n: int) -> bool:
    return isprime(n)


def prime_factors(n: int):
    """Sorted distinct prime divisors of n."""
    return sorted(factorint(n)) if n > 1 else []


def p_part(n: int, p: int) -> int:
    """Largest power of p dividing n."""
    out = 1
    while n % p == 0:
        out *= p
        n //= p
    return out


def p_prime_part(n: int, p: int) -> int:
    return n // p_part(n, p)


def p_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        v += 1
        n //= p
    return v


def digit_sum(n: int, b: int) -> int:
    """Sum of base-b digits of n."""
    if b < 2:
        raise ValueError("base must be >= 2")
    if n < 0:
        raise ValueError("n must be non-negative")
    s = 0
    while n:
        s += n % b
        n //= b
    return s


def legendre_factorial_valuation(n: int, p: int) -> int:
    """v_p(n!) = (n - s_p(n)) / (p - 1)."""
    return (n - digit_sum(n, p)) // (p - 1)
