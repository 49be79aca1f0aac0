"""Dirichlet characters modulo n with exact root-of-unity values.

A character is stored as an exponent vector against the generator basis of
(Z/nZ)^*; its values come from discrete logarithms and stay exact roots of
unity, so multiplicativity, orthogonality sums, conductors and the product
of chi(4) over even characters can all be decided with integer arithmetic.
Whether a finite sum of roots of unity equals a given integer is decided by
reduction modulo the cyclotomic polynomial of the common order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from mpmath import mpf

from .numerics import with_precision, working_precision
from .residues import UnitGroup, divisors, factorize, is_prime, unit_group


# ---------------------------------------------------------------------------
# Exact roots of unity


@dataclass(frozen=True)
class RootOfUnity:
    """Exact e^(2*pi*i*k/m); the fraction k/m is kept reduced with 0 <= k < m."""

    k: int
    m: int = 1

    def __post_init__(self):
        if self.m <= 0:
            raise ValueError(f"order must be positive, got {self.m}")
        k = self.k % self.m
        if k == 0:
            k, m = 0, 1
        else:
            g = math.gcd(k, self.m)
            k, m = k // g, self.m // g
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "m", m)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        return RootOfUnity(self.k * other.m + other.k * self.m, self.m * other.m)

    def __pow__(self, e: int) -> "RootOfUnity":
        return RootOfUnity(self.k * e, self.m)

    def conjugate(self) -> "RootOfUnity":
        return RootOfUnity(-self.k, self.m)

    @property
    def is_one(self) -> bool:
        return self.m == 1

    @property
    def is_real(self) -> bool:
        return self.m <= 2

    def as_int(self) -> int:
        """+1 or -1 for the two real roots; error otherwise."""
        if self.m == 1:
            return 1
        if self.m == 2:
            return -1
        raise ValueError(f"e^(2*pi*i*{self.k}/{self.m}) is not real")

    def to_complex(self, bits: int | None = None):
        bits = bits or working_precision()
        return unit_roots(self.m, bits)[self.k]


ONE = RootOfUnity(0, 1)
MINUS_ONE = RootOfUnity(1, 2)


@lru_cache(maxsize=None)
def unit_roots(m: int, bits: int):
    """e^(2*pi*i*k/m) for k = 0..m-1 at the given precision, cached."""
    with with_precision(bits) as ctx:
        return tuple(ctx.expjpi(mpf(2 * k) / m) for k in range(m))


# ---------------------------------------------------------------------------
# Cyclotomic polynomials and exact sums of roots of unity


def _exact_polydiv(num: list[int], den: tuple[int, ...]) -> list[int]:
    """Quotient of integer polynomials when the division is exact (den monic)."""
    num = list(num)
    deg = len(den) - 1
    quot = [0] * (len(num) - deg)
    for i in range(len(num) - 1, deg - 1, -1):
        c = num[i]
        if c:
            base = i - deg
            quot[base] = c
            for j, dj in enumerate(den):
                num[base + j] -= c * dj
    assert not any(num), "polynomial division was not exact"
    return quot


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial, ascending degree."""
    if m < 1:
        raise ValueError(f"order must be positive, got {m}")
    if m == 1:
        return (-1, 1)
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly = _exact_polydiv(poly, cyclotomic_poly(d))
    return tuple(poly)


def cyclotomic_remainder(coeffs, m: int) -> list[int]:
    """Reduce sum coeffs[j] * zeta_m^j modulo the m-th cyclotomic polynomial."""
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    c = list(coeffs)
    for i in range(len(c) - 1, deg - 1, -1):
        v = c[i]
        if v:
            base = i - deg
            for j in range(deg + 1):
                c[base + j] -= v * phi[j]
    c = c[:deg]
    return c + [0] * (deg - len(c))


def exact_root_sum(roots) -> int | None:
    """Exact integer value of a finite sum of roots of unity, or None.

    Returns None when the sum is a nonrational (or nonintegral) cyclotomic
    number; every rational sum of roots of unity is in fact an integer.
    """
    roots = list(roots)
    if not roots:
        return 0
    m = math.lcm(*(r.m for r in roots))
    coeffs = [0] * m
    for r in roots:
        coeffs[r.k * (m // r.m)] += 1
    rem = cyclotomic_remainder(coeffs, m)
    if any(rem[1:]):
        return None
    return rem[0]


# ---------------------------------------------------------------------------
# Characters


@dataclass(frozen=True)
class DirichletCharacter:
    """A Dirichlet character mod n as exponents against the unit-group basis.

    The value at a unit a is zeta_E ** raw_exponent(a) where E is the group
    exponent; nonunits map to zero.  Instances are immutable and hashable.
    """

    modulus: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        group = unit_group(self.modulus)
        if len(self.exponents) != len(group.component_orders):
            raise ValueError(
                f"expected {len(group.component_orders)} exponents mod {self.modulus}, "
                f"got {len(self.exponents)}"
            )
        reduced = tuple(
            e % d for e, d in zip(self.exponents, group.component_orders)
        )
        object.__setattr__(self, "exponents", reduced)

    @property
    def group(self) -> UnitGroup:
        return unit_group(self.modulus)

    @property
    def value_order(self) -> int:
        """Exponent E of the unit group; all values are E-th roots of unity."""
        return self.group.exponent

    def raw_exponent(self, a: int) -> int | None:
        """Exponent t with chi(a) = zeta_E^t, or None when gcd(a, n) > 1."""
        group = self.group
        dl = group.dlog.get(a % self.modulus)
        if dl is None:
            return None
        E = group.exponent
        t = 0
        for e, d, order in zip(self.exponents, dl, group.component_orders):
            t += e * d * (E // order)
        return t % E

    def __call__(self, a: int) -> RootOfUnity | None:
        t = self.raw_exponent(a)
        if t is None:
            return None
        return RootOfUnity(t, self.value_order)

    @property
    def is_principal(self) -> bool:
        return not any(self.exponents)

    @property
    def parity(self) -> int:
        """chi(-1) as +1 or -1."""
        return self(-1).as_int()

    @property
    def is_even(self) -> bool:
        return self.parity == 1

    @property
    def is_odd(self) -> bool:
        return self.parity == -1

    def conjugate(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, tuple(-e for e in self.exponents))

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if self.modulus != other.modulus:
            raise ValueError("can only multiply characters of the same modulus")
        return DirichletCharacter(
            self.modulus, tuple(a + b for a, b in zip(self.exponents, other.exponents))
        )


def evaluate(chi: DirichletCharacter, a: int) -> RootOfUnity | None:
    """chi(a) as an exact root of unity, or None when chi vanishes at a."""
    return chi(a)


def enumerate_characters(n: int, parity: str = "all") -> list[DirichletCharacter]:
    """All characters mod n in lexicographic exponent order, optionally filtered.

    The principal character always comes first; the order is stable across
    runs, which pins down reported character indices.
    """
    if parity not in ("all", "even", "odd"):
        raise ValueError(f"parity must be all|even|odd, got {parity!r}")
    group = unit_group(n)
    chars = [
        DirichletCharacter(n, exps)
        for exps in product(*(range(d) for d in group.component_orders))
    ]
    if parity == "even":
        return [c for c in chars if c.is_even]
    if parity == "odd":
        return [c for c in chars if c.is_odd]
    return chars


def conductor(chi: DirichletCharacter) -> int:
    """Smallest f | n with chi trivial on units = 1 (mod f)."""
    n = chi.modulus
    for f in divisors(n):
        if all(
            chi.raw_exponent(a) == 0
            for a in range(1, n + 1, f)
            if math.gcd(a, n) == 1
        ):
            return f
    raise AssertionError("f = n always satisfies the kernel condition")


def _root_to_exponent(value: RootOfUnity, order: int) -> int:
    if order % value.m:
        raise ArithmeticError(
            f"value of order {value.m} is not an {order}-th root of unity"
        )
    return value.k * (order // value.m) % order


def _from_values(modulus: int, value_at) -> DirichletCharacter:
    """Character mod `modulus` from its values at the group generators."""
    group = unit_group(modulus)
    exps = tuple(
        _root_to_exponent(value_at(g), order)
        for g, order in zip(group.generators, group.component_orders)
    )
    return DirichletCharacter(modulus, exps)


def primitive_lift(chi: DirichletCharacter) -> DirichletCharacter:
    """The primitive character mod conductor(chi) agreeing with chi on units."""
    f = conductor(chi)
    n = chi.modulus

    def value_at(g: int) -> RootOfUnity:
        b = g
        while math.gcd(b, n) != 1:
            b += f
        return chi(b)

    return _from_values(f, value_at)


@lru_cache(maxsize=1)
def psi_character() -> DirichletCharacter:
    """The nontrivial character mod 4: +1 at 1, -1 at 3 (odd, primitive)."""
    return DirichletCharacter(4, (1,))


def times_psi(chi: DirichletCharacter) -> DirichletCharacter:
    """chi * psi as a character mod 4n for chi of odd modulus n.

    The result has the opposite parity of chi and restricts to psi on the
    mod-4 component.
    """
    n = chi.modulus
    if n % 2 == 0:
        raise ValueError(f"times_psi needs an odd modulus, got {n}")
    psi = psi_character()
    return _from_values(4 * n, lambda g: chi(g) * psi(g))


def even_character_product(n: int, a: int) -> int:
    """Exact product of chi(a) over all even characters mod n; must be +-1.

    The even characters are closed under conjugation, so the product is real;
    it is computed by exact exponent accumulation, never floating point.
    """
    if math.gcd(a, n) != 1:
        raise ValueError(f"a = {a} is not a unit mod {n}")
    E = unit_group(n).exponent
    total = 0
    for chi in enumerate_characters(n, "even"):
        total = (total + chi.raw_exponent(a)) % E
    if total == 0:
        return 1
    if 2 * total == E:
        return -1
    raise ArithmeticError(
        f"product over even characters mod {n} at {a} is not real: "
        f"exponent {total}/{E}"
    )


def chi4_product(p: int) -> int:
    """Exact product of chi(4) over the even characters mod an odd prime p."""
    if not is_prime(p) or p == 2:
        raise ValueError(f"chi4_product needs an odd prime, got {p}")
    return even_character_product(p, 4)
