"""Arithmetic in F_{2^n} with a fixed irreducible modulus.

Elements are plain ints in [0, 2^n): bit i of the int is the coefficient of
x^i in the polynomial basis.  Addition is XOR; multiplication reduces modulo
the context's irreducible polynomial, encoded the same way as an (n+1)-bit
int (e.g. x^3+x+1 -> 0b1011).

The default modulus for degree n is the irreducible polynomial whose int
encoding is smallest, so contexts are reproducible without external tables.
Any monic irreducible of the right degree may be supplied instead; it is
checked at construction time.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_DEGREE = 24


def _poly_degree(p: int) -> int:
    return p.bit_length() - 1


def _poly_mod(a: int, m: int) -> int:
    dm = _poly_degree(m)
    while a.bit_length() - 1 >= dm and a:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def _poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _poly_mod(a, b)
    return a


def _poly_mulmod(a: int, b: int, m: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a.bit_length() == m.bit_length():
            a ^= m
    return r


def reducible_factor_degree(modulus: int) -> int | None:
    """Smallest d such that the modulus has an irreducible factor of degree
    <= d < deg(modulus), or None when the modulus is irreducible.

    Uses the standard gcd(x^(2^i) - x, m) sieve: that gcd is nontrivial
    exactly when m has a factor whose degree divides i.
    """
    n = _poly_degree(modulus)
    if n < 1:
        return 0
    x2i = 2  # x^(2^i) mod modulus, starting at i=0
    for i in range(1, n // 2 + 1):
        x2i = _poly_mulmod(x2i, x2i, modulus)
        if _poly_gcd(x2i ^ 2, modulus) != 1:
            return i
    return None


@lru_cache(maxsize=None)
def default_modulus(n: int) -> int:
    """Int-encoding-smallest irreducible polynomial of degree n over F_2."""
    for cand in range((1 << n) | 1, 1 << (n + 1), 2):
        if reducible_factor_degree(cand) is None:
            return cand
    raise AssertionError(f"no irreducible polynomial of degree {n}")


@dataclass(frozen=True)
class CubicData:
    """Invariants of the minimal cubic of an element of F_{2^{3m}} over F_{2^m}.

    For e outside F_{2^m} the minimal polynomial is
    x^3 + B1 x^2 + B2 x + B3, and u1, u2 are the two twisted-trace values
    Tr3(e^(1+2^(2m+1))) and Tr3(e^(1+2^(m+1))).  They satisfy
    u1 + u2 = B3 + B1*B2 and u1*u2 = B1^3*B3 + B2^3 + B3^2.
    """

    m: int
    epsilon: int
    B1: int
    B2: int
    B3: int
    u1: int
    u2: int


class GF2n:
    """Context for F_{2^n}: modulus, log/exp tables, and element operations."""

    def __init__(self, n: int, modulus: int | None = None):
        if not 1 <= n <= MAX_DEGREE:
            raise ValueError(f"extension degree must be in [1, {MAX_DEGREE}], got {n}")
        if modulus is None:
            modulus = default_modulus(n)
        else:
            if _poly_degree(modulus) != n:
                raise ValueError(
                    f"modulus 0x{modulus:x} is not monic of degree {n}"
                )
            d = reducible_factor_degree(modulus)
            if d is not None:
                raise ValueError(
                    f"modulus 0x{modulus:x} is reducible: "
                    f"it has an irreducible factor of degree {d}"
                )
        self.n = n
        self.modulus = modulus
        self.order = 1 << n
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if n <= 16:
            self._build_tables()
        self._np_ready = False

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_spec(cls, spec: str) -> "GF2n":
        """Parse a field spec string "n:POLYHEX", e.g. "3:b" for x^3+x+1."""
        try:
            n_str, poly_str = spec.split(":")
            n = int(n_str)
            modulus = int(poly_str, 16)
        except ValueError as exc:
            raise ValueError(f"bad field spec {spec!r}; expected 'n:POLYHEX'") from exc
        return cls(n, modulus)

    @property
    def spec_string(self) -> str:
        return f"{self.n}:{self.modulus:x}"

    def __repr__(self) -> str:
        return f"GF2n({self.n}, modulus=0x{self.modulus:x})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GF2n)
            and self.n == other.n
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.n, self.modulus))

    def _mul_raw(self, a: int, b: int) -> int:
        return _poly_mulmod(a, b, self.modulus)

    def _build_tables(self) -> None:
        N = self.order
        # Smallest generator of the multiplicative group, found by direct
        # period measurement.
        for g in range(2, N):
            exp = [0] * (N - 1)
            log = [0] * N
            v = 1
            ok = True
            for i in range(N - 1):
                if v == 1 and i > 0:
                    ok = False
                    break
                exp[i] = v
                log[v] = i
                v = self._mul_raw(v, g)
            if ok and v == 1:
                self._exp = exp
                self._log = log
                self._generator = g
                return
        # n == 1: the group is trivial
        self._exp = [1]
        self._log = [0, 0]
        self._generator = 1

    def _build_np(self) -> None:
        if self._np_ready:
            return
        if self._exp is None:
            raise ValueError(f"bulk operations need log tables (n <= 16), n={self.n}")
        N = self.order
        sentinel = 2 * (N - 1) + 1  # any product with 0 lands in the zero tail
        self._log_np = np.empty(N, dtype=np.int64)
        self._log_np[0] = sentinel
        for v in range(1, N):
            self._log_np[v] = self._log[v]
        ext = np.zeros(2 * sentinel + 1, dtype=np.int64)
        idx = np.arange(2 * (N - 1) - 1, dtype=np.int64)
        if N > 2:
            ext[idx] = np.array(self._exp, dtype=np.int64)[idx % (N - 1)]
        else:
            ext[0] = 1
        self._exp_ext = ext
        self._np_ready = True

    # -- scalar operations ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
        return self._mul_raw(a, b)

    def square(self, a: int) -> int:
        return self.mul(a, a)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in F_{2^n}")
        if self._exp is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k == 0:
                return 1
            if k < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 0
        if self._exp is not None:
            return self._exp[(self._log[a] * k) % (self.order - 1)]
        k %= self.order - 1
        r = 1
        while k:
            if k & 1:
                r = self._mul_raw(r, a)
            a = self._mul_raw(a, a)
            k >>= 1
        return r

    def sqrt(self, a: int) -> int:
        """The unique square root: a^(2^(n-1))."""
        return self.pow(a, 1 << (self.n - 1)) if a else 0

    def trace(self, a: int) -> int:
        """Absolute trace to F_2."""
        t = 0
        v = a
        for _ in range(self.n):
            t ^= v
            v = self.square(v)
        return t

    def subfield_trace(self, a: int, d: int) -> int:
        """Trace of F_{2^d} to F_2, for a lying in that subfield."""
        if self.n % d != 0:
            raise ValueError(f"F_2^{d} is not a subfield of F_2^{self.n}")
        if not self.in_subfield(a, d):
            raise ValueError(f"element {a:#x} is not in F_2^{d}")
        t = 0
        v = a
        for _ in range(d):
            t ^= v
            v = self.square(v)
        return t

    def in_subfield(self, a: int, d: int) -> bool:
        return self.n % d == 0 and self.pow(a, 1 << d) == a

    def rel_trace(self, e: int, m: int) -> int:
        """Relative trace from F_{2^{3m}} to F_{2^m}; requires n == 3m."""
        self._require_cubic_tower(m)
        t = 1 << m
        return e ^ self.pow(e, t) ^ self.pow(e, t * t)

    def rel_norm(self, e: int, m: int) -> int:
        """Relative norm from F_{2^{3m}} to F_{2^m}; requires n == 3m."""
        self._require_cubic_tower(m)
        t = 1 << m
        return self.pow(e, 1 + t + t * t)

    def _require_cubic_tower(self, m: int) -> None:
        if self.n != 3 * m:
            raise ValueError(f"need n == 3m, got n={self.n}, m={m}")

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        group = self.order - 1
        t = group
        for p in _prime_factors(group):
            while t % p == 0 and self.pow(a, t // p) == 1:
                t //= p
        return t

    def generator(self) -> int:
        if self._exp is not None:
            return self._generator
        for g in range(2, self.order):
            if self.mult_order(g) == self.order - 1:
                return g
        return 1

    def cubic_invariants(self, e: int, m: int) -> CubicData:
        """Minimal-cubic coefficients and twisted traces of e over F_{2^m}."""
        self._require_cubic_tower(m)
        if self.in_subfield(e, m):
            raise ValueError(
                f"element {e:#x} lies in F_2^{m}; its minimal polynomial is not cubic"
            )
        t = 1 << m
        x1, x2, x3 = e, self.pow(e, t), self.pow(e, t * t)
        B1 = x1 ^ x2 ^ x3
        B2 = self.mul(x1, x2) ^ self.mul(x1, x3) ^ self.mul(x2, x3)
        B3 = self.mul(self.mul(x1, x2), x3)
        u1 = self.rel_trace(self.pow(e, 1 + (t * t << 1)), m)
        u2 = self.rel_trace(self.pow(e, 1 + (t << 1)), m)
        return CubicData(m=m, epsilon=e, B1=B1, B2=B2, B3=B3, u1=u1, u2=u2)

    # -- bulk (numpy) operations --------------------------------------------

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def log_vec(self, a: np.ndarray) -> np.ndarray:
        self._build_np()
        return self._log_np[a]

    def exp_vec(self, logs: np.ndarray) -> np.ndarray:
        self._build_np()
        return self._exp_ext[logs]

    def mul_vec(self, a, b) -> np.ndarray:
        """Elementwise product of encoded-element arrays (or array * scalar)."""
        self._build_np()
        return self._exp_ext[self._log_np[a] + self._log_np[b]]

    def pow_vec(self, a, k: int) -> np.ndarray:
        """Elementwise a^k for k >= 0 (a may contain zeros when k > 0)."""
        self._build_np()
        if k == 0:
            return np.ones_like(np.asarray(a))
        logs = self._log_np[a] * (k % (self.order - 1) if k >= self.order - 1 else k)
        mask = np.asarray(a) == 0
        out = self._exp_ext[logs % (self.order - 1)]
        return np.where(mask, 0, out)

    def power_table(self, k: int) -> np.ndarray:
        """x^k for every x, as an array indexed by x."""
        return self.pow_vec(self.elements(), k)

    def mul_table(self) -> np.ndarray:
        """Full order x order multiplication table (n <= 12)."""
        if self.n > 12:
            raise ValueError("full multiplication table capped at n <= 12")
        self._build_np()
        logs = self._log_np[:, None] + self._log_np[None, :]
        return self._exp_ext[logs]


@lru_cache(maxsize=None)
def _prime_factors(v: int) -> tuple[int, ...]:
    out = []
    d = 2
    while d * d <= v:
        if v % d == 0:
            out.append(d)
            while v % d == 0:
                v //= d
        d += 1
    if v > 1:
        out.append(v)
    return tuple(out)
