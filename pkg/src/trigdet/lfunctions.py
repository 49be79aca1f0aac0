"""Special values L(1, chi) by independent routes, and the relative class number.

Routes:

* ``l1_oracle`` -- the digamma closed form
  L(1, chi) = -(1/q) * sum_{a mod q} chi(a) * digamma(a/q).
  This is the reference route: it shares no mechanism with the finite
  trigonometric sums below, so agreement between routes is a genuine
  cross-check rather than a tautology.
* ``l1_cot_sum`` -- (pi/2n) * sum over the symmetric unit system of
  chi(j) cot(j*pi/n) for odd chi.
* ``l1_tan_sum`` -- (pi/8n) * sum over the symmetric units mod 4n of
  chi'(j) tan(j*pi/4n) for chi' = chi * psi with chi even of odd modulus.
* ``euler_corrected`` -- L(1, chi) from the primitive character via the
  finite Euler product over primes dividing the modulus but not the
  conductor.

On top of the routes sit the odd-character L-product, the relative class
number h_n^- with a numerical integrality certificate, and the product of
L(1, chi*psi) over even characters mod an odd prime.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from functools import lru_cache

from mpmath import mp, mpc, mpf

from .characters import (
    DirichletCharacter,
    enumerate_characters,
    conductor,
    primitive_lift,
    times_psi,
    unit_roots,
)
from .numerics import cot_pi_table, tan_pi_table, sec_2pi_table, with_precision, working_precision
from .residues import factorize, euler_phi, half_system, is_prime


class IntegralityError(ArithmeticError):
    """A quantity certified to be an integer failed its recognition test."""


class CacheMismatchError(RuntimeError):
    """A persisted class-number entry disagrees with the recomputed value."""


@dataclass(frozen=True)
class LValue:
    """An L(1, chi) value together with the route that produced it."""

    character: DirichletCharacter
    value: mpc
    route: str


@dataclass(frozen=True)
class HMinus:
    """Relative class number of the n-th cyclotomic field, certified integral.

    q_factor is 1 for prime-power n and 2 otherwise; w counts the roots of
    unity in the field (2n for odd n, n when 4 | n); conductor_product is
    the exact integer product of the conductors of the odd characters.
    """

    n: int
    raw: mpf
    rounded: int
    q_factor: int
    w: int
    conductor_product: int
    precision_bits: int


H_MINUS_INT_TOL = 1e-6
H_MINUS_PHI_BOUND = 130


@lru_cache(maxsize=None)
def _digamma_table(q: int, bits: int):
    """digamma(a/q) for units a mod q, as a tuple of (a, value) pairs."""
    with with_precision(bits) as ctx:
        return tuple(
            (a, ctx.digamma(mpf(a) / q))
            for a in range(1, q)
            if math.gcd(a, q) == 1
        )


def l1_oracle(chi: DirichletCharacter, prec: int | None = None) -> mpc:
    """L(1, chi) via the digamma closed form; rejects principal characters."""
    if chi.is_principal:
        raise ValueError("L(1, chi) is only defined here for non-principal chi")
    prec = prec or working_precision()
    q = chi.modulus
    roots = unit_roots(chi.value_order, prec)
    with with_precision(prec):
        acc = mpc(0)
        for a, dig in _digamma_table(q, prec):
            acc += roots[chi.raw_exponent(a)] * dig
        return -acc / q


def l1_cot_sum(chi: DirichletCharacter, prec: int | None = None) -> mpc:
    """(pi/2n) * sum_{j in U_n} chi(j) cot(j*pi/n) for odd chi mod n >= 3."""
    if not chi.is_odd:
        raise ValueError("the cotangent sum requires an odd character")
    prec = prec or working_precision()
    n = chi.modulus
    roots = unit_roots(chi.value_order, prec)
    cot = cot_pi_table(n, prec)
    with with_precision(prec):
        acc = mpc(0)
        for j in half_system(n):
            v = roots[chi.raw_exponent(j)]
            # chi odd and cot odd: the -j term repeats the +j term
            acc += 2 * v * cot[j]
        return mp.pi * acc / (2 * n)


def _check_psi_shape(chi: DirichletCharacter) -> int:
    """Validate chi = (even character mod odd n) * psi; return n."""
    m = chi.modulus
    if m % 4 != 0 or (m // 4) % 2 == 0:
        raise ValueError(f"modulus must be 4n with n odd, got {m}")
    n = m // 4
    if not chi.is_odd:
        raise ValueError("a chi*psi character with chi even must be odd")
    # the unit = 3 (mod 4), = 1 (mod n) isolates the mod-4 component
    b = 3 if n == 1 else (3 * n * pow(n, -1, 4) + 4 * pow(4, -1, n)) % m
    v = chi(b)
    if not (v.is_real and v.as_int() == -1):
        raise ValueError("character does not restrict to psi on the mod-4 component")
    return n


def l1_tan_sum(chi_prime: DirichletCharacter, prec: int | None = None) -> mpc:
    """(pi/8n) * sum_{j in U_4n} chi'(j) tan(j*pi/4n) for chi' = chi * psi."""
    n = _check_psi_shape(chi_prime)
    prec = prec or working_precision()
    m = 4 * n
    roots = unit_roots(chi_prime.value_order, prec)
    tan = tan_pi_table(m, prec)
    with with_precision(prec):
        acc = mpc(0)
        for j in half_system(m):
            v = roots[chi_prime.raw_exponent(j)]
            # chi' odd and tan odd: +-j terms agree
            acc += 2 * v * tan[j]
        return mp.pi * acc / (8 * n)


def secant_sum(chi: DirichletCharacter, prec: int | None = None) -> mpc:
    """sum_{j in U_n} chi(j) sec(2*j*pi/n) for even chi mod odd n >= 3.

    Complex in general (real for real-valued chi); the identity relating it
    to L(1, chi*psi) is exercised by the verification harness.
    """
    n = chi.modulus
    if n < 3 or n % 2 == 0:
        raise ValueError(f"secant sums need an odd modulus >= 3, got {n}")
    if not chi.is_even:
        raise ValueError("the secant sum requires an even character")
    prec = prec or working_precision()
    roots = unit_roots(chi.value_order, prec)
    sec = sec_2pi_table(n, prec)
    with with_precision(prec):
        acc = mpc(0)
        for j in half_system(n):
            v = roots[chi.raw_exponent(j)]
            # chi even and sec even: +-j terms agree
            acc += 2 * v * sec[j % n]
        return acc


def euler_corrected(chi: DirichletCharacter, prec: int | None = None) -> mpc:
    """L(1, chi) as L(1, chi*) times (1 - chi*(p)/p) over p | n, p not | conductor."""
    if chi.is_principal:
        raise ValueError("L(1, chi) is only defined here for non-principal chi")
    prec = prec or working_precision()
    star = primitive_lift(chi)
    value = l1_oracle(star, prec)
    roots = unit_roots(star.value_order, prec)
    with with_precision(prec):
        for p, _ in factorize(chi.modulus):
            if star.modulus % p:
                value *= 1 - roots[star.raw_exponent(p)] / p
        return value


_ROUTES = {
    "oracle": l1_oracle,
    "cot": l1_cot_sum,
    "tan": l1_tan_sum,
    "euler": euler_corrected,
}


def lvalue(chi: DirichletCharacter, route: str = "oracle", prec: int | None = None) -> LValue:
    """L(1, chi) by the named route (oracle | cot | tan | euler)."""
    try:
        fn = _ROUTES[route]
    except KeyError:
        raise ValueError(f"unknown route {route!r}; expected one of {sorted(_ROUTES)}")
    return LValue(chi, fn(chi, prec), route)


def _real_part(value: mpc, prec: int, what: str) -> mpf:
    """Real part of a provably real quantity, with a rounding-level guard."""
    bound = mpf(2) ** (-(prec - 16)) * max(abs(value), mpf(1))
    if abs(mp.im(value)) > bound:
        raise ArithmeticError(f"{what} should be real, got imaginary part {mp.im(value)}")
    return mp.re(value)


def odd_l_product(n: int, prec: int | None = None) -> mpf:
    """Product of L(1, chi*) over the primitive lifts of all odd chi mod n."""
    if n < 3 or n % 4 == 2:
        raise ValueError(f"defined for n >= 3 with n != 2 (mod 4), got {n}")
    prec = prec or working_precision()
    with with_precision(prec):
        acc = mpc(1)
        for chi in enumerate_characters(n, "odd"):
            acc *= l1_oracle(primitive_lift(chi), prec)
        return _real_part(acc, prec, f"odd L-product mod {n}")


@lru_cache(maxsize=None)
def h_minus(n: int, prec: int | None = None, phi_bound: int = H_MINUS_PHI_BOUND) -> HMinus:
    """Relative class number of the n-th cyclotomic field.

    h_n^- = Q * w * sqrt(prod f_chi) * prod L(1, chi*) / (2*pi)^(phi(n)/2),
    the product over odd characters mod n.  The raw value must sit within
    1e-6 of an integer or an IntegralityError is raised; the square root of
    the conductor product is taken exactly when it is a perfect square.
    """
    if n < 3 or n % 4 == 2:
        raise ValueError(f"h_minus is defined for n >= 3, n != 2 (mod 4), got {n}")
    phi = euler_phi(n)
    if phi > phi_bound:
        raise ValueError(f"phi({n}) = {phi} exceeds the configured bound {phi_bound}")
    prec = prec or working_precision()
    odd_chars = enumerate_characters(n, "odd")
    cond_product = math.prod(conductor(chi) for chi in odd_chars)
    q_factor = 1 if len(factorize(n)) == 1 else 2
    w = 2 * n if n % 2 else n
    with with_precision(prec):
        acc = mpc(1)
        for chi in odd_chars:
            acc *= l1_oracle(primitive_lift(chi), prec)
        l_product = _real_part(acc, prec, f"odd L-product mod {n}")
        root = math.isqrt(cond_product)
        sqrt_f = mpf(root) if root * root == cond_product else mp.sqrt(mpf(cond_product))
        raw = q_factor * w * sqrt_f * l_product / (2 * mp.pi) ** (phi // 2)
        rounded = int(mp.nint(raw))
        if abs(raw - rounded) > H_MINUS_INT_TOL or rounded < 1:
            raise IntegralityError(
                f"h^-({n}) = {mp.nstr(raw, 30)} failed integer recognition at {H_MINUS_INT_TOL}"
            )
    return HMinus(n, raw, rounded, q_factor, w, cond_product, prec)


def even_psi_l_product(p: int, prec: int | None = None, route: str = "euler") -> mpf:
    """Product of L(1, chi*psi) over all even characters mod an odd prime p."""
    if not is_prime(p) or p == 2:
        raise ValueError(f"expected an odd prime, got {p}")
    if route not in ("euler", "tan"):
        raise ValueError(f"route must be euler or tan, got {route!r}")
    prec = prec or working_precision()
    fn = euler_corrected if route == "euler" else l1_tan_sum
    with with_precision(prec):
        acc = mpc(1)
        for chi in enumerate_characters(p, "even"):
            acc *= fn(times_psi(chi), prec)
        return _real_part(acc, prec, f"even chi*psi L-product mod {p}")


# ---------------------------------------------------------------------------
# Persistent class-number cache.  Entries are never trusted blindly: a rerun
# recomputes the value and fails loudly when the file disagrees.

DEFAULT_CACHE_PATH = "hminus_cache.json"


def _cache_entry(hm: HMinus) -> dict:
    return {
        "n": hm.n,
        "h": hm.rounded,
        "Q": hm.q_factor,
        "w": hm.w,
        "conductor_product": hm.conductor_product,
        "precision_bits": hm.precision_bits,
    }


def load_hminus_cache(path: str = DEFAULT_CACHE_PATH) -> list[dict]:
    if not os.path.exists(path):
        return []
    with open(path, "r", encoding="utf-8") as fh:
        entries = json.load(fh)
    if not isinstance(entries, list):
        raise ValueError(f"{path} does not hold a JSON array")
    return entries


def record_h_minus(n: int, path: str = DEFAULT_CACHE_PATH, prec: int | None = None):
    """Compute h^-(n), validating any cached entry; returns (HMinus, status).

    status is "validated" when the file already held a matching entry and
    "added" when a new entry was written.  A disagreement raises
    CacheMismatchError and leaves the file untouched.
    """
    hm = h_minus(n, prec)
    entries = load_hminus_cache(path)
    fresh = _cache_entry(hm)
    for entry in entries:
        if entry.get("n") == n:
            stable = ("h", "Q", "w", "conductor_product")
            if any(entry.get(key) != fresh[key] for key in stable):
                raise CacheMismatchError(
                    f"cache entry for n={n} in {path} disagrees with recomputation: "
                    f"{entry} vs {fresh}"
                )
            return hm, "validated"
    entries.append(fresh)
    entries.sort(key=lambda e: e["n"])
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(entries, fh, indent=2)
        fh.write("\n")
    return hm, "added"
