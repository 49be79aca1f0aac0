"""Arithmetic of the multiplicative group (Z/nZ)^*.

Covers trial-division factorization, Jacobi symbols, the structure of
(Z/nZ)^* as a product of cyclic groups with full discrete-log tables, the
half/symmetric residue systems, the permutation of the half system induced
by inversion up to sign, and its closed-form sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product


def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as ((prime, exponent), ...), ascending."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def euler_phi(n: int) -> int:
    phi = 1
    for p, e in factorize(n):
        phi *= (p - 1) * p ** (e - 1)
    return phi


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_up_to(limit: int) -> list[int]:
    """Sieve of Eratosthenes, inclusive."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, flag in enumerate(sieve) if flag]


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n; 0 iff gcd(a, n) > 1."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs an odd positive denominator, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def mult_order(a: int, n: int) -> int:
    """Least l >= 1 with a^l = 1 (mod n); requires gcd(a, n) = 1."""
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    if math.gcd(a, n) != 1:
        raise ValueError(f"mult_order needs gcd(a, n) = 1, got a={a}, n={n}")
    if n == 1:
        return 1
    t = a % n
    order = 1
    while t != 1:
        t = t * a % n
        order += 1
    return order


@dataclass(frozen=True, eq=False)
class UnitGroup:
    """(Z/nZ)^* as a product of cyclic groups with a full discrete-log table.

    dlog maps each unit residue to its exponent vector against `generators`;
    multiplying out generators[i] ** dlog[a][i] recovers a mod n.
    """

    n: int
    factorization: tuple[tuple[int, int], ...]
    generators: tuple[int, ...]
    component_orders: tuple[int, ...]
    dlog: dict

    @property
    def phi(self) -> int:
        return len(self.dlog)

    @property
    def exponent(self) -> int:
        """lcm of the component orders (1 for the trivial group)."""
        return math.lcm(*self.component_orders) if self.component_orders else 1


def _primitive_root_mod_prime(p: int) -> int:
    prime_factors = [q for q, _ in factorize(p - 1)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in prime_factors):
            return g
    raise ArithmeticError(f"no primitive root mod {p}")  # unreachable for prime p


def _cyclic_components(p: int, e: int) -> list[tuple[int, int]]:
    """Generators (mod p^e) with orders for one prime-power factor."""
    if p == 2:
        if e == 1:
            return []
        if e == 2:
            return [(3, 2)]
        return [(2**e - 1, 2), (3, 2 ** (e - 2))]
    q = p**e
    g = _primitive_root_mod_prime(p)
    if e > 1 and pow(g, p - 1, p * p) == 1:
        g += p
    return [(g % q, (p - 1) * p ** (e - 1))]


@lru_cache(maxsize=None)
def unit_group(n: int) -> UnitGroup:
    """Structure of (Z/nZ)^*, cached; moduli in scope are small (< 10^4)."""
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    if n == 1:
        return UnitGroup(1, (), (), (), {0: ()})
    fact = factorize(n)
    generators: list[int] = []
    orders: list[int] = []
    for p, e in fact:
        q = p**e
        rest = n // q
        for g, order in _cyclic_components(p, e):
            if rest == 1:
                lifted = g
            else:
                # CRT: agree with g mod p^e, trivial on the complement
                inv = pow(rest, -1, q)
                lifted = (1 + rest * ((g - 1) * inv % q)) % n
            generators.append(lifted)
            orders.append(order)
    dlog: dict[int, tuple[int, ...]] = {}
    combos = [((), 1)]
    for g, order in zip(generators, orders):
        powers = []
        acc = 1
        for _ in range(order):
            powers.append(acc)
            acc = acc * g % n
        combos = [
            (exps + (e,), r * powers[e] % n) for exps, r in combos for e in range(order)
        ]
    for exps, r in combos:
        dlog[r] = exps
    group = UnitGroup(n, fact, tuple(generators), tuple(orders), dlog)
    assert group.phi == euler_phi(n)
    return group


@dataclass(frozen=True)
class ResidueSystems:
    """Half system s = {1 <= a < n/2, (a,n)=1} and symmetric system u = s U -s."""

    n: int
    s: tuple[int, ...]
    u: tuple[int, ...]


def half_system(n: int) -> tuple[int, ...]:
    """Units in [1, n/2); valid for any n >= 3 (internal helper)."""
    return tuple(a for a in range(1, (n + 1) // 2) if math.gcd(a, n) == 1)


@lru_cache(maxsize=None)
def residue_systems(n: int) -> ResidueSystems:
    if n < 3 or n % 2 == 0:
        raise ValueError(f"residue systems are defined for odd n >= 3, got {n}")
    s = half_system(n)
    u = tuple(sorted([-a for a in s] + list(s)))
    return ResidueSystems(n, s, u)


@dataclass(frozen=True)
class InversionPermutation:
    """The half-system permutation k -> k~ with k * k~ = +-1 (mod n)."""

    domain: tuple[int, ...]   # half system, ascending
    images: tuple[int, ...]   # image of domain[i]
    sign: int

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.domain, self.images))


@lru_cache(maxsize=None)
def tau_permutation(n: int) -> InversionPermutation:
    """Map each k in the half system to the representative of k^-1 mod +-1.

    Exactly one of k^-1 and n - k^-1 lies below n/2 since n is odd; the
    permutation sign comes from its cycle decomposition.
    """
    s = residue_systems(n).s
    index = {k: i for i, k in enumerate(s)}
    images = []
    for k in s:
        inv = pow(k, -1, n)
        ktil = inv if 2 * inv < n else n - inv
        assert ktil in index, f"inverse of {k} mod {n} missed the half system"
        images.append(ktil)
    perm = [index[im] for im in images]
    seen = [False] * len(perm)
    cycles = 0
    for i in range(len(perm)):
        if not seen[i]:
            cycles += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    sign = -1 if (len(perm) - cycles) % 2 else 1
    return InversionPermutation(s, tuple(images), sign)


def epsilon(n: int) -> int:
    """Closed-form sign of the inversion permutation of the half system.

    -1 when n = p^e with p = 1 or 4e+3 (mod 8), or when n = p1^e1 * p2^e2
    with p1 + p2 = 0 (mod 4); +1 otherwise.  Agrees with the brute-force
    permutation sign (tested over the full sweep) and equals -(2/p) for
    odd primes p.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError(f"epsilon is defined for odd n >= 3, got {n}")
    fact = factorize(n)
    if len(fact) == 1:
        p, e = fact[0]
        if p % 8 == 1 or p % 8 == (4 * e + 3) % 8:
            return -1
        return 1
    if len(fact) == 2:
        (p1, _), (p2, _) = fact
        if (p1 + p2) % 4 == 0:
            return -1
        return 1
    return 1
