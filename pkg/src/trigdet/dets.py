"""Secant/cosecant matrices and certified high-precision determinants.

Variants (n odd >= 3, S the half system of units below n/2):

* ``D``      -- sec(2jk*pi/n) over j, k in S.
* ``Dprime`` -- columns of D permuted by the inversion map k -> k~.
* ``D1``     -- sec(2jk*pi/p) over 0 <= j, k <= (p-1)/2 (prime p).
* ``D2``     -- sec(2jk*pi/p) - 1 over 1 <= j, k <= (p-1)/2 (prime p).
* ``CSC``    -- csc(2jk*pi/p) over 1 <= j, k <= (p-1)/2 (prime p).

Determinants are LU factorizations with partial pivoting, recomputed at
doubled precision until two consecutive results agree to 2^-128 relative
(or both fall under the zero-detection bound, which certifies an exactly
vanishing determinant).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from mpmath import mp, mpc, mpf

from .characters import enumerate_characters, unit_roots
from .numerics import csc_2pi_table, sec_2pi_table, with_precision, working_precision
from .residues import is_prime, residue_systems, tau_permutation, unit_group

VARIANTS = ("D", "Dprime", "D1", "D2", "CSC")
PRIME_ONLY_VARIANTS = ("D1", "D2", "CSC")

CERT_REL_TOL_BITS = 128
MAX_DOUBLINGS = 4


class CertificationError(ArithmeticError):
    """Determinant failed to stabilize across precision doublings."""


@dataclass
class TrigMatrix:
    """A square matrix of exact-argument trig values plus its recipe.

    The recipe (n, variant) allows the certification loop to rebuild the
    matrix at higher precision instead of re-rounding stale entries.
    """

    n: int
    variant: str
    dim: int
    entries: list
    precision_bits: int


def _indices(n: int, variant: str):
    if variant in ("D", "Dprime"):
        return residue_systems(n).s
    if variant == "D1":
        return tuple(range((n + 1) // 2))
    return tuple(range(1, (n + 1) // 2))  # D2, CSC


def _build_entries(n: int, variant: str, bits: int) -> list:
    idx = _indices(n, variant)
    if variant == "CSC":
        table = csc_2pi_table(n, bits)
        return [[table[j * k % n] for k in idx] for j in idx]
    table = sec_2pi_table(n, bits)
    if variant == "Dprime":
        tau = tau_permutation(n).as_dict()
        return [[table[j * tau[k] % n] for k in idx] for j in idx]
    if variant == "D2":
        with with_precision(bits):
            return [[table[j * k % n] - 1 for k in idx] for j in idx]
    return [[table[j * k % n] for k in idx] for j in idx]


def build(n: int, variant: str, prec: int | None = None) -> TrigMatrix:
    """Construct the matrix for (n, variant) at the given precision."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    if n < 3 or n % 2 == 0:
        raise ValueError(f"matrices are defined for odd n >= 3, got {n}")
    if variant in PRIME_ONLY_VARIANTS and not is_prime(n):
        raise ValueError(f"variant {variant} requires a prime modulus, got {n}")
    prec = prec or working_precision()
    entries = _build_entries(n, variant, prec)
    return TrigMatrix(n, variant, len(entries), entries, prec)


def _lu_determinant(entries: list, bits: int):
    """Determinant by LU with partial pivoting; ties break to the lowest row."""
    with with_precision(bits):
        a = [list(row) for row in entries]
        dim = len(a)
        det = mpf(1)
        for col in range(dim):
            pivot_row = col
            pivot_abs = abs(a[col][col])
            for r in range(col + 1, dim):
                v = abs(a[r][col])
                if v > pivot_abs:
                    pivot_abs, pivot_row = v, r
            if pivot_abs == 0:
                return mpf(0)
            if pivot_row != col:
                a[col], a[pivot_row] = a[pivot_row], a[col]
                det = -det
            pivot = a[col][col]
            det *= pivot
            inv = 1 / pivot
            row_c = a[col]
            for r in range(col + 1, dim):
                factor = a[r][col] * inv
                if factor:
                    row_r = a[r]
                    for c in range(col + 1, dim):
                        row_r[c] -= factor * row_c[c]
        return det


def _zero_bound(entries: list, bits: int):
    with with_precision(bits):
        max_entry = max(abs(e) for row in entries for e in row)
        return mpf(2) ** (-(bits // 2)) * max_entry ** len(entries)


def determinant(matrix: TrigMatrix) -> mpf:
    """Certified determinant of a TrigMatrix.

    Certification: the LU result at precision P and at 2P must agree to
    2^-128 relative, or both must fall below 2^(-P/2) * (max entry)^dim,
    which certifies a determinant that vanishes identically.  On failure the
    precision doubles again, up to four times.
    """
    base_bits = matrix.precision_bits
    rel_tol = mpf(2) ** (-CERT_REL_TOL_BITS)
    prev = _lu_determinant(matrix.entries, base_bits)
    prev_bits = base_bits
    for _ in range(MAX_DOUBLINGS):
        bits = prev_bits * 2
        cur = _lu_determinant(_build_entries(matrix.n, matrix.variant, bits), bits)
        with with_precision(bits):
            bound = _zero_bound(matrix.entries, prev_bits)
            if abs(prev) <= bound and abs(cur) <= bound:
                return cur
            scale = max(abs(prev), abs(cur))
            if abs(prev - cur) <= rel_tol * scale:
                return cur
        prev, prev_bits = cur, bits
    raise CertificationError(
        f"determinant of ({matrix.n}, {matrix.variant}) did not stabilize "
        f"after {MAX_DOUBLINGS} doublings from {base_bits} bits"
    )


def zero_detection_bound(matrix: TrigMatrix) -> mpf:
    """The certified-zero threshold 2^(-P/2) * (max entry)^dim for this matrix."""
    return _zero_bound(matrix.entries, matrix.precision_bits)


@lru_cache(maxsize=None)
def certified_determinant(n: int, variant: str, prec: int | None = None) -> mpf:
    """Cached certified determinant for a recipe (used by the sweeps)."""
    prec = prec or working_precision()
    return determinant(build(n, variant, prec))


def csc_normalized(p: int, prec: int | None = None) -> mpf:
    """det(CSC_p) / (2^((p-1)/2) * p^((p-5)/4)) for primes p = 3 (mod 4)."""
    if p % 4 != 3:
        raise ValueError(f"the normalized cosecant determinant needs p = 3 (mod 4), got {p}")
    prec = prec or working_precision()
    det = certified_determinant(p, "CSC", prec)
    with with_precision(prec):
        scale = mpf(2) ** ((p - 1) // 2) * mpf(p) ** (mpf(p - 5) / 4)
        return det / scale


@dataclass
class DiagonalizationReport:
    """Conjugation of a column-permuted matrix by the even-character table.

    ``diagonal`` lists the diagonal of U M U* with U = m^(-1/2) [chi_i(a_j)];
    ``d11`` is the principal-character entry on the unnormalized character-sum
    scale, i.e. m times diagonal[0]; ``offdiag_max`` certifies that the
    conjugated matrix is numerically diagonal.
    """

    n: int
    variant: str
    offdiag_max: mpf
    diagonal: list
    d11: mpc


def _character_table_matrix(n: int, prec: int):
    chars = enumerate_characters(n, "even")
    s = residue_systems(n).s
    roots = unit_roots(unit_group(n).exponent, prec)
    m = len(chars)
    with with_precision(prec):
        scale = 1 / mp.sqrt(m)
        omega = [
            [roots[chi.raw_exponent(a)] * scale for a in s]
            for chi in chars
        ]
    return omega, m


def conjugate_diagonalize(n: int, variant: str = "D", prec: int | None = None) -> DiagonalizationReport:
    """Conjugate the inversion-permuted matrix by the even-character table.

    variant "D" uses the permuted secant matrix; variant "D2" (prime
    n = 3 mod 4) uses the permuted secant-minus-one matrix.
    """
    if variant not in ("D", "D2"):
        raise ValueError(f"variant must be D or D2, got {variant!r}")
    if n < 3 or n % 2 == 0:
        raise ValueError(f"odd n >= 3 required, got {n}")
    if variant == "D2" and (not is_prime(n) or n % 4 != 3):
        raise ValueError(f"variant D2 requires a prime = 3 (mod 4), got {n}")
    prec = prec or working_precision()
    omega, m = _character_table_matrix(n, prec)
    s = residue_systems(n).s
    tau = tau_permutation(n).as_dict()
    table = sec_2pi_table(n, prec)
    shift = 1 if variant == "D2" else 0
    with with_precision(prec):
        a = [[table[j * tau[k] % n] - shift for k in s] for j in s]
        left = [
            [sum(omega[i][j] * a[j][k] for j in range(m)) for k in range(m)]
            for i in range(m)
        ]
        b = [
            [
                sum(left[i][k] * mp.conj(omega[i2][k]) for k in range(m))
                for i2 in range(m)
            ]
            for i in range(m)
        ]
        offdiag = mpf(0)
        for i in range(m):
            for j in range(m):
                if i != j:
                    offdiag = max(offdiag, abs(b[i][j]))
        diagonal = [b[i][i] for i in range(m)]
        d11 = m * diagonal[0]
    return DiagonalizationReport(n, variant, offdiag, diagonal, d11)


def unitarity_check(n: int, prec: int | None = None) -> mpf:
    """Max deviation of U U* from the identity for the character table U."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"odd n >= 3 required, got {n}")
    prec = prec or working_precision()
    omega, m = _character_table_matrix(n, prec)
    with with_precision(prec):
        worst = mpf(0)
        for i in range(m):
            for j in range(m):
                g = sum(omega[i][k] * mp.conj(omega[j][k]) for k in range(m))
                target = 1 if i == j else 0
                worst = max(worst, abs(g - target))
        return worst


def dump_matrix(matrix: TrigMatrix, path: str) -> None:
    """Write entries as decimal strings, one row per line, tab-separated."""
    digits = int(matrix.precision_bits * 0.30103) + 2
    with open(path, "w", encoding="utf-8") as fh:
        for row in matrix.entries:
            fh.write("\t".join(mp.nstr(e, digits) for e in row))
            fh.write("\n")
