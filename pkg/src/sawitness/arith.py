"""Small integer helpers shared by the curve modules."""

from sympy import factorint, isprime

__all__ = ["isprime", "prime_factors", "valuation", "legendre", "odd_primes"]


def prime_factors(n):
    """Sorted list of the distinct primes dividing ``n`` (``n != 0``)."""
    return sorted(factorint(abs(n)))


def valuation(n, p):
    """Exponent of ``p`` in ``n``; ``n`` must be nonzero."""
    if n == 0:
        raise ValueError("valuation of zero is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def legendre(r, p):
    """Legendre symbol (r/p) for an odd prime p, by Euler's criterion."""
    r %= p
    if r == 0:
        return 0
    return 1 if pow(r, (p - 1) // 2, p) == 1 else -1


def odd_primes(limit):
    """Odd primes up to and including ``limit``, ascending."""
    if limit < 3:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(3, limit + 1) if sieve[i]]
