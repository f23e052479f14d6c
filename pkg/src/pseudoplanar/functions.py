"""Pseudo-planar functions over F_{2^n}: tests, criteria, constructions.

A function f is pseudo-planar when x -> f(x+e) + f(x) + e*x is a permutation
of the field for every nonzero e.  This module carries the direct test, the
Moore-determinant permutation criterion for linearized polynomials, the known
monomial families, and the three binomial constructions on F_{2^{3m}} with
their exact trace criteria.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .field import GF2n


@dataclass(frozen=True)
class SparsePoly:
    """A function F_{2^n} -> F_{2^n} as a sparse sum of coeff * x^exp terms.

    Canonical form: strictly increasing exponents, no zero coefficients.
    Use SparsePoly.make / SparsePoly.parse rather than the raw constructor.
    """

    field: GF2n
    terms: tuple[tuple[int, int], ...]

    @classmethod
    def make(cls, field: GF2n, terms) -> "SparsePoly":
        acc: dict[int, int] = {}
        for exp, coeff in terms:
            if not 0 <= exp <= field.order - 1:
                raise ValueError(f"exponent {exp} out of range [0, {field.order - 1}]")
            if not 0 <= coeff < field.order:
                raise ValueError(f"coefficient {coeff:#x} is not a field element")
            acc[exp] = acc.get(exp, 0) ^ coeff
        return cls(field, tuple(sorted((e, c) for e, c in acc.items() if c)))

    @classmethod
    def zero(cls, field: GF2n) -> "SparsePoly":
        return cls(field, ())

    @classmethod
    def monomial(cls, field: GF2n, coeff: int, exp: int) -> "SparsePoly":
        return cls.make(field, [(exp, coeff)])

    @classmethod
    def parse(cls, field: GF2n, literal: str) -> "SparsePoly":
        """Parse "e1:cHEX,e2:cHEX,..." (exponent decimal, coefficient hex)."""
        if literal in ("", "0:0"):
            return cls.zero(field)
        terms = []
        for part in literal.split(","):
            try:
                e_str, c_str = part.split(":")
                terms.append((int(e_str), int(c_str, 16)))
            except ValueError as exc:
                raise ValueError(f"bad polynomial term {part!r}") from exc
        return cls.make(field, terms)

    @property
    def literal(self) -> str:
        if not self.terms:
            return "0:0"
        return ",".join(f"{e}:{c:x}" for e, c in self.terms)

    def eval(self, x: int) -> int:
        f = self.field
        out = 0
        for exp, coeff in self.terms:
            out ^= f.mul(coeff, f.pow(x, exp))
        return out

    def value_table(self) -> np.ndarray:
        """f(x) for every x, as an array indexed by x."""
        f = self.field
        out = np.zeros(f.order, dtype=np.int64)
        for exp, coeff in self.terms:
            out ^= f.mul_vec(coeff, f.power_table(exp))
        return out

    def is_quadratic_type(self) -> bool:
        """True when every exponent has the form 2^i + 2^j with i != j."""
        return all(bin(e).count("1") == 2 for e, _ in self.terms)


def difference_map_table(f: SparsePoly, eps: int, ftab: np.ndarray | None = None) -> np.ndarray:
    """Value table of x -> f(x+eps) + f(x) + eps*x."""
    fld = f.field
    if ftab is None:
        ftab = f.value_table()
    xs = fld.elements()
    return ftab[xs ^ eps] ^ ftab ^ fld.mul_vec(eps, xs)


def pseudoplanar_witness(f: SparsePoly) -> int | None:
    """Smallest eps whose difference map is not a permutation, else None."""
    fld = f.field
    N = fld.order
    ftab = f.value_table()
    xs = fld.elements()
    logs = fld.log_vec(xs)
    for eps in range(1, N):
        d = ftab[xs ^ eps] ^ ftab ^ fld.exp_vec(fld.log_vec(np.int64(eps)) + logs)
        if np.bincount(d, minlength=N).max() > 1:
            return eps
    return None


def is_pseudoplanar(f: SparsePoly) -> bool:
    return pseudoplanar_witness(f) is None


# -- linearized polynomials ------------------------------------------------


def linearized_eval(field: GF2n, coeffs, d: int, x: int) -> int:
    """Evaluate L(x) = sum c_i x^(q^i) with q = 2^d."""
    out = 0
    for i, c in enumerate(coeffs):
        out ^= field.mul(c, field.pow(x, 1 << (d * i)))
    return out


def moore_det(field: GF2n, coeffs, d: int) -> int:
    """Determinant of the twisted circulant deciding bijectivity of a
    linearized polynomial over F_{q^r}, q = 2^d, r = len(coeffs).

    Entry (j, k) is c_((j-k) mod r) raised to the q^k power; L permutes the
    field exactly when the determinant is nonzero.
    """
    r = len(coeffs)
    if field.n % (d * r) != 0 or field.n != d * r:
        raise ValueError(f"need n == d*r, got n={field.n}, d={d}, r={r}")
    M = [
        [field.pow(coeffs[(j - k) % r], 1 << (d * k)) for k in range(r)]
        for j in range(r)
    ]
    det = 1
    for col in range(r):
        piv = next((row for row in range(col, r) if M[row][col]), None)
        if piv is None:
            return 0
        M[col], M[piv] = M[piv], M[col]  # char 2: swaps do not change the determinant
        det = field.mul(det, M[col][col])
        inv = field.inv(M[col][col])
        M[col] = [field.mul(inv, v) for v in M[col]]
        for row in range(col + 1, r):
            fac = M[row][col]
            if fac:
                M[row] = [a ^ field.mul(fac, b) for a, b in zip(M[row], M[col])]
    return det


def linearized_is_bijection(field: GF2n, coeffs, d: int) -> bool:
    """Brute-force bijectivity check; the independent side of moore_det."""
    seen = set()
    for x in range(field.order):
        seen.add(linearized_eval(field, coeffs, d, x))
    return len(seen) == field.order


# -- known pseudo-planar monomial families ---------------------------------

MONOMIAL_FAMILIES = ("linear", "gold_half", "scherr_zieve")


def construct_known_monomial(field: GF2n, family: str, a: int, k: int | None = None) -> SparsePoly:
    """Build a known pseudo-planar monomial, validating its row condition."""
    n = field.n
    if family == "linear":
        if a == 0:
            raise ValueError("linear family needs a != 0")
        kk = 0 if k is None else k
        if not 0 <= kk < n:
            raise ValueError(f"linear family needs 0 <= k < n, got k={kk}")
        return SparsePoly.monomial(field, a, 1 << kk)
    if family == "gold_half":
        if n % 2 != 0:
            raise ValueError(f"gold_half family needs even n, got n={n}")
        half = n // 2
        if a == 0 or not field.in_subfield(a, half):
            raise ValueError(f"gold_half family needs a in F_2^{half}*")
        if field.subfield_trace(a, half) != 0:
            raise ValueError(f"gold_half family needs Tr_{half}(a) = 0")
        return SparsePoly.monomial(field, a, (1 << half) + 1)
    if family == "scherr_zieve":
        if n % 6 != 0:
            raise ValueError(f"scherr_zieve family needs 6 | n, got n={n}")
        kk = n // 6
        e1 = (1 << (2 * kk)) - 1  # 4^k - 1
        group = field.order - 1
        if a == 0 or field.pow(a, group // e1) != 1:
            raise ValueError(f"scherr_zieve family needs a to be a {e1}-th power")
        if field.pow(a, group // (3 * e1)) == 1:
            raise ValueError(f"scherr_zieve family needs a not to be a {3 * e1}-th power")
        t = (1 << (2 * kk)) * ((1 << (2 * kk)) + 1)  # 4^k (4^k + 1)
        return SparsePoly.monomial(field, a, t)
    raise ValueError(f"unknown family {family!r}; expected one of {MONOMIAL_FAMILIES}")


def known_family_hits(field: GF2n) -> set[tuple[int, int]]:
    """All (coeff, exponent) pairs covered by the known monomial families
    for this field."""
    n = field.n
    hits: set[tuple[int, int]] = set()
    for a in range(1, field.order):
        for k in range(n):
            hits.add((a, 1 << k))
    if n % 2 == 0:
        half = n // 2
        for a in range(1, field.order):
            if field.in_subfield(a, half) and field.subfield_trace(a, half) == 0:
                hits.add((a, (1 << half) + 1))
    if n % 6 == 0:
        k = n // 6
        e1 = (1 << (2 * k)) - 1
        group = field.order - 1
        for a in range(1, field.order):
            if field.pow(a, group // e1) == 1 and field.pow(a, group // (3 * e1)) != 1:
                hits.add((a, (1 << (2 * k)) * ((1 << (2 * k)) + 1)))
    return hits


def scaling_orbit(field: GF2n, c: int, t: int) -> set[tuple[int, int]]:
    """Orbit of the monomial c*x^t under f(x) -> u^(-2) f(u x).

    That substitution preserves pseudo-planarity (the difference map of the
    image is the original difference map composed with x -> u x and scaled
    by u^(-2)) and sends c*x^t to (c*u^(t-2))*x^t.
    """
    return {(field.mul(c, field.pow(u, t - 2)), t) for u in range(1, field.order)}


def known_hits_closure(field: GF2n) -> set[tuple[int, int]]:
    """known_family_hits closed under the scaling orbit.

    On some fields the known-family coefficient conditions single out one
    orbit representative per exponent rather than the full coefficient set;
    the closure is the complete prediction for an exhaustive search.
    """
    out: set[tuple[int, int]] = set()
    for c, t in known_family_hits(field):
        out |= scaling_orbit(field, c, t)
    return out


# -- binomial constructions on F_{2^{3m}} ----------------------------------


def _cubic_field(field: GF2n, m: int) -> None:
    if field.n != 3 * m:
        raise ValueError(f"need a field of degree 3m = {3 * m}, got n = {field.n}")


def construct_binomial1(field: GF2n, m: int, a: int) -> SparsePoly:
    """f = a^(t^2+1) x^(t^2+1) + a^(-(t+1)) x^(t+1) with t = 2^m, m even."""
    _cubic_field(field, m)
    if m % 2 != 0:
        raise ValueError(f"this binomial family needs even m, got m={m}")
    if a == 0:
        raise ValueError("coefficient parameter a must be nonzero")
    t = 1 << m
    return SparsePoly.make(
        field,
        [
            (t * t + 1, field.pow(a, t * t + 1)),
            (t + 1, field.pow(a, -(t + 1))),
        ],
    )


def binomial1_criterion(field: GF2n, m: int, a: int) -> bool:
    """Exact pseudo-planarity criterion for construct_binomial1: the trace
    expression must be nonzero for every nonzero eps.  Vectorized over eps.
    """
    _cubic_field(field, m)
    if m % 2 != 0:
        raise ValueError(f"this binomial family needs even m, got m={m}")
    if a == 0:
        raise ValueError("coefficient parameter a must be nonzero")
    t = 1 << m
    c1 = field.pow(a, t * t + t) ^ field.pow(a, -(t * t + t + 2))
    c2 = field.pow(a, t - t * t)
    a_t1 = field.pow(a, t + 1)
    eps = np.arange(1, field.order, dtype=np.int64)
    inner = a_t1 ^ field.pow_vec(eps, t - 1)
    # The last summand carries the Frobenius-stable norm exponent 1+t+t^2,
    # so inside Tr3 it contributes N3(eps); with a bare eps instead, the
    # expression stops agreeing with the difference-map determinant.
    expr = (
        field.mul_vec(field.mul_vec(np.int64(c1), inner), field.pow_vec(eps, t + 2))
        ^ field.mul_vec(np.int64(c2), field.pow_vec(eps, 3))
        ^ field.pow_vec(eps, 1 + t + t * t)
    )
    tr3 = expr ^ field.pow_vec(expr, t) ^ field.pow_vec(expr, t * t)
    return bool((tr3 != 0).all())


def binomial1_criterion_det(field: GF2n, m: int, a: int) -> bool:
    """Same criterion via the Moore determinant of the per-eps linearized
    difference map; must agree with binomial1_criterion everywhere."""
    _cubic_field(field, m)
    t = 1 << m
    ca = field.pow(a, t * t + 1)
    cb = field.pow(a, -(t + 1))
    for eps in range(1, field.order):
        c0 = (
            field.mul(ca, field.pow(eps, t * t))
            ^ field.mul(cb, field.pow(eps, t))
            ^ eps
        )
        c1 = field.mul(cb, eps)
        c2 = field.mul(ca, eps)
        if moore_det(field, [c0, c1, c2], m) == 0:
            return False
    return True


def construct_shifted_binomial(field: GF2n, m: int, variant: int) -> SparsePoly:
    """The two monic binomial families on F_{2^{3m}}, t = 2^m:

    variant 2: x^(t+1)   + x^(t^2+t)   (pseudo-planar when m != 2 mod 3)
    variant 3: x^(t^2+1) + x^(t^2+t)   (pseudo-planar when m != 1 mod 3)

    The residue conditions are warnings, not errors, so the failing cases
    can be constructed and inspected.
    """
    _cubic_field(field, m)
    t = 1 << m
    if variant == 2:
        if m % 3 == 2:
            warnings.warn(
                f"m={m} is 2 mod 3: variant 2 is not pseudo-planar", stacklevel=2
            )
        return SparsePoly.make(field, [(t + 1, 1), (t * t + t, 1)])
    if variant == 3:
        if m % 3 == 1:
            warnings.warn(
                f"m={m} is 1 mod 3: variant 3 is not pseudo-planar", stacklevel=2
            )
        return SparsePoly.make(field, [(t * t + 1, 1), (t * t + t, 1)])
    raise ValueError(f"variant must be 2 or 3, got {variant}")


def shifted_binomial_obstruction(field: GF2n, m: int, variant: int, e: int) -> int:
    """The per-eps obstruction value for the shifted binomials:
    N3(e) + Tr3(e^3 + e^(1+2t)) for variant 2, N3(e) + Tr3(e^3 + e^(2+t))
    for variant 3.  The binomial is pseudo-planar iff this is nonzero for
    every nonzero e."""
    _cubic_field(field, m)
    t = 1 << m
    if variant == 2:
        extra = 1 + 2 * t
    elif variant == 3:
        extra = 2 + t
    else:
        raise ValueError(f"variant must be 2 or 3, got {variant}")
    inner = field.pow(e, 3) ^ field.pow(e, extra)
    return field.rel_norm(e, m) ^ field.rel_trace(inner, m)


def shifted_binomial_criterion(field: GF2n, m: int, variant: int) -> bool:
    """Vectorized check that the obstruction is nonzero for every eps."""
    _cubic_field(field, m)
    t = 1 << m
    extra = 1 + 2 * t if variant == 2 else 2 + t
    if variant not in (2, 3):
        raise ValueError(f"variant must be 2 or 3, got {variant}")
    eps = np.arange(1, field.order, dtype=np.int64)
    inner = field.pow_vec(eps, 3) ^ field.pow_vec(eps, extra)
    tr3 = inner ^ field.pow_vec(inner, t) ^ field.pow_vec(inner, t * t)
    m_eps = field.pow_vec(eps, 1 + t + t * t) ^ tr3
    return bool((m_eps != 0).all())
