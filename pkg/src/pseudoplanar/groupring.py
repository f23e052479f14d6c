"""Exact multiset algebra over the additive group of GR(4, n).

A multiset of ring elements is a dense integer vector of length 4^n indexed
by element idx.  Signed vectors are allowed so identities like
2^n*delta_0 + (R - Z) are first-class values.  Convolution, involution, the
additive character transform and its inverse are all exact (int64 end to
end); the fast transform is an n-dimensional radix-4 butterfly over the
additive Z4^n coordinates, anchored against a naive double loop for small n.
"""

from __future__ import annotations

import numpy as np

from .exact import GaussInt
from .galois_ring import GR4
from .functions import SparsePoly

NAIVE_MAX_DEGREE = 3


class GroupVec:
    """Integer-valued function on GR(4, n), i.e. a (signed) multiset."""

    __slots__ = ("ring", "counts")

    def __init__(self, ring: GR4, counts: np.ndarray):
        counts = np.asarray(counts, dtype=np.int64)
        if counts.shape != (ring.size,):
            raise ValueError(
                f"counts vector has shape {counts.shape}, expected ({ring.size},)"
            )
        self.ring = ring
        self.counts = counts
        self.counts.setflags(write=False)

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, ring: GR4) -> "GroupVec":
        return cls(ring, np.zeros(ring.size, dtype=np.int64))

    @classmethod
    def delta(cls, ring: GR4, x) -> "GroupVec":
        counts = np.zeros(ring.size, dtype=np.int64)
        counts[ring.idx(x)] = 1
        return cls(ring, counts)

    @classmethod
    def indicator(cls, ring: GR4, indices) -> "GroupVec":
        counts = np.zeros(ring.size, dtype=np.int64)
        counts[np.asarray(list(indices), dtype=np.int64)] = 1
        return cls(ring, counts)

    @classmethod
    def full_group(cls, ring: GR4) -> "GroupVec":
        return cls(ring, np.ones(ring.size, dtype=np.int64))

    @classmethod
    def two_torsion(cls, ring: GR4) -> "GroupVec":
        return cls(ring, ring.two_torsion_mask.astype(np.int64))

    # -- basic algebra -------------------------------------------------------

    def _check_ctx(self, other: "GroupVec") -> None:
        if self.ring != other.ring:
            raise ValueError("group ring context mismatch")

    def __add__(self, other: "GroupVec") -> "GroupVec":
        self._check_ctx(other)
        return GroupVec(self.ring, self.counts + other.counts)

    def __sub__(self, other: "GroupVec") -> "GroupVec":
        self._check_ctx(other)
        return GroupVec(self.ring, self.counts - other.counts)

    def scale(self, k: int) -> "GroupVec":
        return GroupVec(self.ring, k * self.counts)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupVec)
            and self.ring == other.ring
            and bool((self.counts == other.counts).all())
        )

    def __hash__(self):
        return hash((self.ring, self.counts.tobytes()))

    def total(self) -> int:
        return int(self.counts.sum())

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.counts)

    def involute(self) -> "GroupVec":
        """Re-index by negation: the multiset {-g : g in A}."""
        out = np.empty_like(self.counts)
        out[self.ring.neg_perm] = self.counts
        return GroupVec(self.ring, out)

    def __repr__(self) -> str:
        nz = self.support()
        return f"GroupVec(n={self.ring.n}, support={len(nz)}, total={self.total()})"

    # -- convolution ---------------------------------------------------------

    def convolve(self, other: "GroupVec") -> "GroupVec":
        self._check_ctx(other)
        return _convolve_fast(self, other)

    def convolve_naive(self, other: "GroupVec") -> "GroupVec":
        """O(16^n) reference convolution; anchors the transform path."""
        self._check_ctx(other)
        ring = self.ring
        if ring.n > NAIVE_MAX_DEGREE:
            raise ValueError(
                f"naive convolution is capped at n <= {NAIVE_MAX_DEGREE}"
            )
        out = np.zeros(ring.size, dtype=np.int64)
        for i in self.support():
            ci = self.counts[i]
            xi = ring.pair(int(i))
            for j in other.support():
                out[ring.idx(ring.add(xi, ring.pair(int(j))))] += ci * other.counts[j]
        return GroupVec(ring, out)

    # -- character transform -------------------------------------------------

    def char_transform(self) -> "SpectrumVec":
        """chi_a(A) = sum_g A_g i^Tr(ag) for every a, as exact Gaussian ints."""
        ring = self.ring
        re, im = _coord_dft(ring, self.counts, sign=+1)
        # entry a of the spectrum lives at the Z4^n label of chi_a
        return SpectrumVec(ring, re[ring.dual_perm], im[ring.dual_perm])

    # -- serialization -------------------------------------------------------

    def to_sparse(self) -> list[list[int]]:
        return [[int(i), int(self.counts[i])] for i in self.support()]

    @classmethod
    def from_sparse(cls, ring: GR4, items) -> "GroupVec":
        counts = np.zeros(ring.size, dtype=np.int64)
        for i, c in items:
            if not 0 <= i < ring.size:
                raise ValueError(f"element index {i} out of range")
            counts[i] = c
        return cls(ring, counts)


class SpectrumVec:
    """Character values of a multiset: entry a = chi_a(A), a Gaussian integer."""

    __slots__ = ("ring", "re", "im")

    def __init__(self, ring: GR4, re: np.ndarray, im: np.ndarray):
        self.ring = ring
        self.re = np.asarray(re, dtype=np.int64)
        self.im = np.asarray(im, dtype=np.int64)
        if self.re.shape != (ring.size,) or self.im.shape != (ring.size,):
            raise ValueError("spectrum vector has wrong length")

    def value(self, a_idx: int) -> GaussInt:
        return GaussInt(int(self.re[a_idx]), int(self.im[a_idx]))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SpectrumVec)
            and self.ring == other.ring
            and bool((self.re == other.re).all())
            and bool((self.im == other.im).all())
        )

    def __hash__(self):
        return hash((self.ring, self.re.tobytes(), self.im.tobytes()))

    def pointwise_mul(self, other: "SpectrumVec") -> "SpectrumVec":
        if self.ring != other.ring:
            raise ValueError("group ring context mismatch")
        return SpectrumVec(
            self.ring,
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def inverse_transform(self) -> GroupVec:
        """Recover the multiset: A_g = (1/4^n) sum_a chi_a(A) i^-Tr(ag).

        Raises if the input is not the transform of an integer vector.
        """
        ring = self.ring
        # scatter back to Z4^n labels, then run the conjugate-kernel butterfly
        fre = np.empty(ring.size, dtype=np.int64)
        fim = np.empty(ring.size, dtype=np.int64)
        fre[ring.dual_perm] = self.re
        fim[ring.dual_perm] = self.im
        re, im = _label_idft(ring, fre, fim)
        if (im != 0).any() or (re % ring.size != 0).any():
            bad = int(np.flatnonzero((im != 0) | (re % ring.size != 0))[0])
            raise ValueError(
                f"spectrum is not the transform of an integer multiset "
                f"(first failure at element idx {bad})"
            )
        return GroupVec(ring, re // ring.size)

    def to_sparse(self) -> list[list[int]]:
        nz = np.flatnonzero((self.re != 0) | (self.im != 0))
        return [[int(i), int(self.re[i]), int(self.im[i])] for i in nz]


# -- fast transform plumbing --------------------------------------------------
#
# The additive group of GR(4,n) is Z4^n in the oracle coordinates; for the
# character chi_a the pairing satisfies Tr(a x) = u(a) . v(x) mod 4 where v
# maps elements to coordinates and u = ring.dual_perm maps chi-labels to
# coordinates.  The transform over Z4^n factorizes into n radix-4 stages with
# kernel i^{u_j v_j}; everything stays in a pair of int64 tensors with
# i * (r, s) = (-s, r).


def _radix4(re: np.ndarray, im: np.ndarray, sign: int) -> tuple[np.ndarray, np.ndarray]:
    """Apply the kernel i^{sign * u v} along every axis of (4,)*n tensors."""
    for ax in range(re.ndim):
        r0, r1, r2, r3 = (np.take(re, v, axis=ax) for v in range(4))
        m0, m1, m2, m3 = (np.take(im, v, axis=ax) for v in range(4))
        s02r, d02r = r0 + r2, r0 - r2
        s13r, d13r = r1 + r3, r1 - r3
        s02m, d02m = m0 + m2, m0 - m2
        s13m, d13m = m1 + m3, m1 - m3
        # rows of the kernel: u=0 -> sum; u=2 -> alternating sum;
        # u=1,3 -> d02 +- sign*i*d13
        out_r = [s02r + s13r, d02r - sign * d13m, s02r - s13r, d02r + sign * d13m]
        out_m = [s02m + s13m, d02m + sign * d13r, s02m - s13m, d02m - sign * d13r]
        re = np.stack(out_r, axis=ax)
        im = np.stack(out_m, axis=ax)
    return re, im


def _coord_dft(ring: GR4, counts: np.ndarray, sign: int) -> tuple[np.ndarray, np.ndarray]:
    """DFT of an element-indexed int vector; returns label-indexed (re, im)."""
    g = np.zeros(ring.size, dtype=np.int64)
    g[ring.coord_of] = counts
    re = g.reshape((4,) * ring.n)
    im = np.zeros_like(re)
    re, im = _radix4(re, im, sign)
    return re.reshape(ring.size), im.reshape(ring.size)


def _label_idft(ring: GR4, fre: np.ndarray, fim: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Un-normalized inverse DFT of a label-indexed spectrum; element-indexed."""
    re = fre.reshape((4,) * ring.n)
    im = fim.reshape((4,) * ring.n)
    re, im = _radix4(re, im, sign=-1)
    return re.reshape(ring.size)[ring.coord_of], im.reshape(ring.size)[ring.coord_of]


def _convolve_fast(A: GroupVec, B: GroupVec) -> GroupVec:
    ring = A.ring
    ar, ai = _coord_dft(ring, A.counts, sign=+1)
    br, bi = _coord_dft(ring, B.counts, sign=+1)
    pr = ar * br - ai * bi
    pi = ar * bi + ai * br
    re = pr.reshape((4,) * ring.n)
    im = pi.reshape((4,) * ring.n)
    re, im = _radix4(re, im, sign=-1)
    re = re.reshape(ring.size)[ring.coord_of]
    im = im.reshape(ring.size)[ring.coord_of]
    if (im != 0).any() or (re % ring.size != 0).any():
        raise AssertionError("transform convolution produced non-integer output")
    return GroupVec(ring, re // ring.size)


# -- difference sets ----------------------------------------------------------


def build_df(ring: GR4, f: SparsePoly) -> GroupVec:
    """The graph-of-f set {x + 2*sqrt(f(x)) : x in the Teichmuller system}."""
    if f.field != ring.field:
        raise ValueError("polynomial field does not match the ring")
    field = ring.field
    counts = np.zeros(ring.size, dtype=np.int64)
    values = f.value_table()
    for x in range(field.order):
        counts[ring.idx((x, field.sqrt(int(values[x]))))] = 1
    return GroupVec(ring, counts)


def rds_expected(ring: GR4) -> GroupVec:
    """2^n * delta_0 + (R - Z): the difference multiset of a (2^n,2^n,2^n,1)-RDS."""
    counts = np.ones(ring.size, dtype=np.int64)
    counts[ring.two_torsion_mask] = 0
    counts[0] = 1 << ring.n
    return GroupVec(ring, counts)


def verify_rds(D: GroupVec) -> tuple[bool, list[tuple[int, int, int]]]:
    """Check D * involute(D) == 2^n*delta_0 + (R - Z).

    Returns (ok, violations) with at most 10 violations, each a triple
    (element idx, actual multiplicity, expected multiplicity).
    """
    ring = D.ring
    diff = D.convolve(D.involute())
    expected = rds_expected(ring)
    bad = np.flatnonzero(diff.counts != expected.counts)
    violations = [
        (int(g), int(diff.counts[g]), int(expected.counts[g])) for g in bad[:10]
    ]
    return len(bad) == 0, violations
