"""Association schemes from pseudo-planar difference sets in GR(4, n).

The difference set D_f of a pseudo-planar f induces a 6-part partition of
the ring (identity, D_f minus 0, its negative, the nonzero 2-torsion, the
support of D_f^2 outside those, and the rest).  This module verifies the
Schur-ring axioms exactly, computes the first and second eigenmatrices over
exact Gaussian integers/rationals, builds the dual partition of the
character group, evaluates the Fourier spectrum, and fuses classes via the
constant-block-row-sum criterion.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact import GaussInt, GaussRat, mat_inverse
from .functions import SparsePoly, pseudoplanar_witness
from .galois_ring import GR4
from .groupring import GroupVec, build_df, verify_rds

SCHEMA_VERSION = 1


class SchemeError(ValueError):
    """Structural failure: the input does not produce the expected scheme."""


@dataclass(frozen=True)
class Partition6:
    """Six disjoint 0/1 vectors covering the ring; slots may be empty."""

    ring: GR4
    classes: tuple[GroupVec, ...]

    def __post_init__(self):
        labels = np.full(self.ring.size, -1, dtype=np.int64)
        for k, S in enumerate(self.classes):
            sup = S.support()
            if (labels[sup] != -1).any():
                raise SchemeError("partition classes are not disjoint")
            labels[sup] = k
        if (labels == -1).any():
            raise SchemeError("partition classes do not cover the ring")

    @property
    def class_sizes(self) -> list[int]:
        return [S.total() for S in self.classes]

    @property
    def labels(self) -> np.ndarray:
        labels = np.empty(self.ring.size, dtype=np.int64)
        for k, S in enumerate(self.classes):
            labels[S.support()] = k
        return labels

    def nonempty_slots(self) -> list[int]:
        return [k for k, S in enumerate(self.classes) if S.total() > 0]


@dataclass(frozen=True)
class DualPartition:
    """Dual class index per character label, plus the sizes m_0..m_5."""

    ring: GR4
    labels: np.ndarray
    sizes: tuple[int, ...]

    def nonempty_slots(self) -> list[int]:
        return [k for k, m in enumerate(self.sizes) if m > 0]


def build_partition(D: GroupVec) -> Partition6:
    """Partition the ring by the difference-set structure of D.

    D must be a (2^n, 2^n, 2^n, 1) difference set relative to the 2-torsion
    subgroup (i.e. come from a pseudo-planar function); otherwise the class
    sizes would not be well defined and a SchemeError is raised.
    """
    ring = D.ring
    ok, violations = verify_rds(D)
    if not ok:
        raise SchemeError(
            f"input is not a relative difference set; first violations "
            f"(idx, got, want): {violations}"
        )
    s0 = GroupVec.delta(ring, ring.zero)
    s1 = D - s0
    s2 = s1.involute()
    s3 = GroupVec.two_torsion(ring) - s0
    used = s0.counts + s1.counts + s2.counts + s3.counts
    dsq = D.convolve(D)
    s4_mask = (dsq.counts > 0) & (used == 0)
    s5_mask = (dsq.counts == 0) & (used == 0)
    s4 = GroupVec(ring, s4_mask.astype(np.int64))
    s5 = GroupVec(ring, s5_mask.astype(np.int64))
    return Partition6(ring, (s0, s1, s2, s3, s4, s5))


def class_spectra(part: Partition6) -> tuple[np.ndarray, np.ndarray]:
    """Character sums chi_a(S_k): two (6, 4^n) int arrays (re, im)."""
    re = np.empty((6, part.ring.size), dtype=np.int64)
    im = np.empty((6, part.ring.size), dtype=np.int64)
    for k, S in enumerate(part.classes):
        sp = S.char_transform()
        re[k], im[k] = sp.re, sp.im
    return re, im


def verify_schur(part: Partition6):
    """Intersection numbers p_{ij}^k, or a witness that they don't exist.

    Returns (p_tensor, None) on success — a (6,6,6) array with
    p_tensor[i][j][k] = multiplicity of any S_k element in S_i * S_j — or
    (None, (i, j, k, g, g_prime)) naming two elements of the same class
    with different multiplicities.
    """
    ring = part.ring
    labels = part.labels
    p = np.zeros((6, 6, 6), dtype=np.int64)
    for i in range(6):
        for j in range(i, 6):
            conv = part.classes[i].convolve(part.classes[j])
            for k in range(6):
                sup = part.classes[k].support()
                if len(sup) == 0:
                    continue
                vals = conv.counts[sup]
                vmin, vmax = int(vals.min()), int(vals.max())
                if vmin != vmax:
                    g = int(sup[int(np.argmin(vals))])
                    g2 = int(sup[int(np.argmax(vals))])
                    return None, (i, j, k, g, g2)
                p[i, j, k] = p[j, i, k] = vmin
    return p, None


def s1_identities_hold(part: Partition6) -> bool:
    """The two exact multiset identities satisfied by S_1.

    S_1 * involute(S_1) = (2^n - 1) delta_0 + S_4 + S_5, and
    S_1^2 = S_3 + 2 S_4 (n odd) or S_3 + 2 S_2 + 2 S_4 (n even).
    """
    ring = part.ring
    s0, s1, s2, s3, s4, s5 = part.classes
    lhs = s1.convolve(s1.involute())
    if lhs != s0.scale((1 << ring.n) - 1) + s4 + s5:
        return False
    sq = s1.convolve(s1)
    if ring.n % 2 == 1:
        return sq == s3 + s4.scale(2)
    return sq == s3 + s2.scale(2) + s4.scale(2)


def _dual_signatures(n: int) -> list[GaussInt]:
    """Expected chi(S_1) value for dual classes E_2..E_5, in slot order."""
    if n % 2 == 1:
        b = 1 << ((n - 1) // 2)
        return [
            GaussInt(-1 + b, b),
            GaussInt(-1 + b, -b),
            GaussInt(-1 - b, b),
            GaussInt(-1 - b, -b),
        ]
    c = 1 << (n // 2)
    return [
        GaussInt(-1 + c, 0),
        GaussInt(-1 - c, 0),
        GaussInt(-1, c),
        GaussInt(-1, -c),
    ]


def dual_partition(part: Partition6) -> DualPartition:
    """Group characters chi_a by the value chi_a(S_1).

    Slot order is pinned: E_0 = {chi_0}, E_1 = characters trivial outside
    the 2-torsion (value -1), E_2..E_5 by the four +-b +-bi (n odd) or
    +-2^{n/2}, +-2^{n/2} i (n even) branches.  A character whose value
    matches no slot is a structure error.  For n >= 3 all six classes must
    be nonempty.
    """
    ring = part.ring
    n = ring.n
    sp = part.classes[1].char_transform()
    labels = np.full(ring.size, -1, dtype=np.int64)
    labels[0] = 0
    want = [GaussInt(-1, 0)] + _dual_signatures(n)
    for slot, v in enumerate(want, start=1):
        mask = (sp.re == v.re) & (sp.im == v.im)
        mask[0] = False
        labels[mask] = slot
    if (labels == -1).any():
        a = int(np.flatnonzero(labels == -1)[0])
        raise SchemeError(
            f"character {a} has unexpected class sum "
            f"chi(S1) = {GaussInt(int(sp.re[a]), int(sp.im[a]))}"
        )
    sizes = tuple(int((labels == k).sum()) for k in range(6))
    if n >= 3 and min(sizes) == 0:
        raise SchemeError(f"expected 6 dual classes for n={n}, sizes {sizes}")
    if sizes[1] != (1 << n) - 1:
        raise SchemeError(f"m_1 = {sizes[1]} != 2^n - 1")
    if n % 2 == 0:
        if sizes[2] - sizes[3] != (1 << (3 * n // 2)) - (1 << (n // 2)):
            raise SchemeError("m_2 - m_3 mismatch")
        if sizes[4] != sizes[5]:
            raise SchemeError("m_4 != m_5")
    return DualPartition(ring, labels, sizes)


def eigen_P(part: Partition6, dual: DualPartition):
    """First eigenmatrix over the nonempty slots.

    Returns (P, row_slots, col_slots): P[j][i] is the constant value
    chi(S_{col_slots[i]}) over E_{row_slots[j]}.  Non-constant values within
    a dual class raise SchemeError.
    """
    re, im = class_spectra(part)
    row_slots = dual.nonempty_slots()
    col_slots = part.nonempty_slots()
    P: list[list[GaussInt]] = []
    for j in row_slots:
        members = np.flatnonzero(dual.labels == j)
        row = []
        for i in col_slots:
            r, m = re[i][members], im[i][members]
            if int(r.min()) != int(r.max()) or int(m.min()) != int(m.max()):
                raise SchemeError(
                    f"chi(S_{i}) is not constant on dual class {j}"
                )
            row.append(GaussInt(int(r[0]), int(m[0])))
        P.append(row)
    return P, row_slots, col_slots


def eigen_Q(P: list[list[GaussInt]], ring_size: int) -> list[list[GaussRat]]:
    """Second eigenmatrix: |R| * P^{-1}, exact."""
    inv = mat_inverse(P)
    return [[GaussRat.of(ring_size) * v for v in row] for row in inv]


def closed_form_P(n: int) -> list[list[GaussInt]]:
    """The first eigenmatrix predicted for every pseudo-planar f on F_{2^n}.

    Rows follow the dual slot order E_0..E_5, columns the class order
    S_0..S_5 (including empty slots for n < 3).
    """
    g = GaussInt
    if n % 2 == 1:
        b = 1 << ((n - 1) // 2)
        k = 2 * b * b - 1
        v45 = 2 * b**4 - 3 * b * b + 1
        return [
            [g(1), g(k), g(k), g(k), g(v45), g(v45)],
            [g(1), g(-1), g(-1), g(k), g(1 - b * b), g(1 - b * b)],
            [g(1), g(-1 + b, b), g(-1 + b, -b), g(-1),
             g(1 - b) * g(1, -b), g(1 - b) * g(1, b)],
            [g(1), g(-1 + b, -b), g(-1 + b, b), g(-1),
             g(1 - b) * g(1, b), g(1 - b) * g(1, -b)],
            [g(1), g(-1 - b, b), g(-1 - b, -b), g(-1),
             g(1 + b) * g(1, -b), g(1 + b) * g(1, b)],
            [g(1), g(-1 - b, -b), g(-1 - b, b), g(-1),
             g(1 + b) * g(1, b), g(1 + b) * g(1, -b)],
        ]
    b = 1 << ((n - 2) // 2)
    k = 4 * b * b - 1
    return [
        [g(1), g(k), g(k), g(k), g(8 * b**4 - 10 * b * b + 2), g(8 * b**4 - 2 * b * b)],
        [g(1), g(-1), g(-1), g(k), g(2 - 2 * b * b), g(-2 * b * b)],
        [g(1), g(2 * b - 1), g(2 * b - 1), g(-1),
         g(2 * b * b - 4 * b + 2), g(-2 * b * b)],
        [g(1), g(-2 * b - 1), g(-2 * b - 1), g(-1),
         g(2 * b * b + 4 * b + 2), g(-2 * b * b)],
        [g(1), g(-1, 2 * b), g(-1, -2 * b), g(-1), g(2 - 2 * b * b), g(2 * b * b)],
        [g(1), g(-1, -2 * b), g(-1, 2 * b), g(-1), g(2 - 2 * b * b), g(2 * b * b)],
    ]


def closed_form_Q(n: int) -> list[list[GaussRat]]:
    """The second eigenmatrix: rows S_0..S_5, columns E_0..E_5."""

    def q(re, im=0):
        return GaussRat(Fraction(re), Fraction(im))

    if n % 2 == 1:
        b = 1 << ((n - 1) // 2)
        h = Fraction(b, 2)
        f23 = h * (2 * b**3 + 2 * b * b - b - 1)
        f45 = h * (2 * b**3 - 2 * b * b - b + 1)
        return [
            [q(1), q(2 * b * b - 1), q(f23), q(f23), q(f45), q(f45)],
            [q(1), q(-1),
             q(h * (b * b - 1), -h * (b * b + b)),
             q(h * (b * b - 1), h * (b * b + b)),
             q(h * (1 - b * b), -h * (b * b - b)),
             q(h * (1 - b * b), h * (b * b - b))],
            [q(1), q(-1),
             q(h * (b * b - 1), h * (b * b + b)),
             q(h * (b * b - 1), -h * (b * b + b)),
             q(h * (1 - b * b), h * (b * b - b)),
             q(h * (1 - b * b), -h * (b * b - b))],
            [q(1), q(2 * b * b - 1), q(-h * (1 + b)), q(-h * (1 + b)),
             q(h * (1 - b)), q(h * (1 - b))],
            [q(1), q(-1), q(-h, -h * b), q(-h, h * b), q(h, h * b), q(h, -h * b)],
            # the last entry rationalizes b(b^2+1)/(2(1-bi)) to b(1+bi)/2
            [q(1), q(-1), q(-h, h * b), q(-h, -h * b), q(h, -h * b), q(h, h * b)],
        ]
    b = 1 << ((n - 2) // 2)
    return [
        [q(1), q(4 * b * b - 1),
         q(b * (4 * b**3 + 4 * b * b - b - 1)),
         q(b * (4 * b**3 - 4 * b * b - b + 1)),
         q(b * b * (4 * b * b - 1)), q(b * b * (4 * b * b - 1))],
        [q(1), q(-1),
         q(b * (2 * b * b + b - 1)), q(-b * (2 * b * b - b - 1)),
         q(-b * b, -2 * b**3), q(-b * b, 2 * b**3)],
        [q(1), q(-1),
         q(b * (2 * b * b + b - 1)), q(-b * (2 * b * b - b - 1)),
         q(-b * b, 2 * b**3), q(-b * b, -2 * b**3)],
        [q(1), q(4 * b * b - 1), q(-b * (1 + b)), q(-b * (b - 1)),
         q(-b * b), q(-b * b)],
        [q(1), q(-1), q(b * (b - 1)), q(b * (1 + b)), q(-b * b), q(-b * b)],
        [q(1), q(-1), q(-b * (1 + b)), q(-b * (b - 1)), q(b * b), q(b * b)],
    ]


def spectrum_closed_form(n: int) -> list[tuple[GaussInt, int]]:
    """Predicted Fourier spectrum of any pseudo-planar f on F_{2^n},
    sorted by (re, im)."""
    if n % 2 == 1:
        b = 1 << ((n - 1) // 2)
        hi = (b * (2 * b**3 + 2 * b * b - b - 1)) // 2
        lo = (b * (2 * b**3 - 2 * b * b - b + 1)) // 2
        rows = [
            (GaussInt(2 * b * b), 1),
            (GaussInt(0), 2 * b * b - 1),
            (GaussInt(b, b), hi),
            (GaussInt(b, -b), hi),
            (GaussInt(-b, b), lo),
            (GaussInt(-b, -b), lo),
        ]
    else:
        b = 1 << ((n - 2) // 2)
        rows = [
            (GaussInt(4 * b * b), 1),
            (GaussInt(0), 4 * b * b - 1),
            (GaussInt(2 * b), b * (4 * b**3 + 4 * b * b - b - 1)),
            (GaussInt(-2 * b), b * (4 * b**3 - 4 * b * b - b + 1)),
            (GaussInt(0, 2 * b), b * b * (4 * b * b - 1)),
            (GaussInt(0, -2 * b), b * b * (4 * b * b - 1)),
        ]
    rows = [(v, f) for v, f in rows if f > 0]
    return sorted(rows, key=lambda vf: vf[0].sort_key())


def fourier_spectrum(ring: GR4, f: SparsePoly) -> list[tuple[GaussInt, int]]:
    """Distinct character-sum values of D_f with frequencies, sorted by
    (re, im).  Requires f pseudo-planar; use raw_spectrum otherwise."""
    eps = pseudoplanar_witness(f)
    if eps is not None:
        raise SchemeError(
            f"{f.literal} is not pseudo-planar (witness eps = {eps:#x}); "
            "use raw_spectrum for arbitrary functions"
        )
    return raw_spectrum(ring, f)


def raw_spectrum(ring: GR4, f: SparsePoly) -> list[tuple[GaussInt, int]]:
    sp = build_df(ring, f).char_transform()
    pairs, freq = np.unique(
        np.stack([sp.re, sp.im], axis=1), axis=0, return_counts=True
    )
    rows = [(GaussInt(int(r), int(m)), int(c)) for (r, m), c in zip(pairs, freq)]
    return sorted(rows, key=lambda vf: vf[0].sort_key())


# -- fusion -------------------------------------------------------------------


class FusionError(ValueError):
    """The column partition admits no matching constant-block-row-sum fusion."""


def bm_fuse(P: list[list[GaussInt]], col_partition: list[list[int]]):
    """Fuse scheme classes via the constant-block-row-sum criterion.

    Given an eigenmatrix P and a partition of its columns (cell 0 must be
    {0}), searches for a row partition with cell {0} first such that every
    (row cell, column cell) block of P has a constant row sum.  Rows are
    grouped by their block-row-sum signature, which is the only possible
    row partition.  Returns (fused matrix, row_partition); raises
    FusionError with a witness otherwise.
    """
    m = len(P)
    cols = sorted(c for cell in col_partition for c in cell)
    if cols != list(range(len(P[0]))):
        raise FusionError("column partition does not partition the columns")
    if col_partition[0] != [0]:
        raise FusionError("column cell 0 must be {0}")
    signatures = []
    for r in range(m):
        signatures.append(
            tuple(
                sum((P[r][c] for c in cell), GaussInt()) for cell in col_partition
            )
        )
    order: list[tuple] = []
    groups: dict[tuple, list[int]] = {}
    for r, sig in enumerate(signatures):
        if sig not in groups:
            groups[sig] = []
            order.append(sig)
        groups[sig].append(r)
    if groups[signatures[0]] != [0]:
        other = next(r for r in groups[signatures[0]] if r != 0)
        raise FusionError(
            f"row 0 shares its block-row-sum signature with row {other}"
        )
    if len(order) != len(col_partition):
        raise FusionError(
            f"{len(order)} distinct row signatures for "
            f"{len(col_partition)} column cells"
        )
    fused = [list(sig) for sig in order]
    row_partition = [groups[sig] for sig in order]
    return fused, row_partition


# -- reports ------------------------------------------------------------------


@dataclass(frozen=True)
class SchemeReport:
    partition: Partition6
    dual: DualPartition
    p_tensor: np.ndarray
    P: list[list[GaussInt]]
    Q: list[list[GaussRat]]
    row_slots: list[int]
    col_slots: list[int]

    @property
    def class_count(self) -> int:
        return len(self.col_slots) - 1

    def matches_closed_forms(self) -> bool:
        n = self.partition.ring.n
        cp = closed_form_P(n)
        if any(
            self.P[j][i] != cp[rj][ci]
            for j, rj in enumerate(self.row_slots)
            for i, ci in enumerate(self.col_slots)
        ):
            return False
        cq = closed_form_Q(n)
        return all(
            self.Q[i][j] == cq[ci][rj]
            for i, ci in enumerate(self.col_slots)
            for j, rj in enumerate(self.row_slots)
        )

    def to_json(self) -> str:
        size = self.partition.ring.size
        pq_ok = _check_pq(self.P, self.Q, size)
        data = {
            "schema_version": SCHEMA_VERSION,
            "n": self.partition.ring.n,
            "class_sizes": self.partition.class_sizes,
            "dual_sizes": list(self.dual.sizes),
            "class_count": self.class_count,
            "row_slots": self.row_slots,
            "col_slots": self.col_slots,
            "p_tensor": [
                [int(i), int(j), int(k), int(v)]
                for (i, j, k), v in np.ndenumerate(self.p_tensor)
                if v
            ],
            "P": [[[e.re, e.im] for e in row] for row in self.P],
            "Q": [
                [
                    [
                        e.re.numerator, e.im.numerator,
                        int(np.lcm(e.re.denominator, e.im.denominator)),
                    ]
                    for e in row
                ]
                for row in self.Q
            ],
            "pq_identity": pq_ok,
            "matches_closed_forms": self.matches_closed_forms(),
        }
        return json.dumps(data, indent=2)


def _check_pq(P, Q, size: int) -> bool:
    m = len(P)
    for j in range(m):
        for k in range(m):
            acc = GaussRat()
            for i in range(m):
                acc = acc + GaussRat.of(P[j][i]) * Q[i][k]
            want = GaussRat.of(size if j == k else 0)
            if acc != want:
                return False
    return True


def build_report(D: GroupVec) -> SchemeReport:
    part = build_partition(D)
    p_tensor, witness = verify_schur(part)
    if witness is not None:
        i, j, k, g, g2 = witness
        raise SchemeError(
            f"intersection numbers not constant: S_{i}*S_{j} differs on "
            f"elements {g} and {g2} of S_{k}"
        )
    dual = dual_partition(part)
    P, row_slots, col_slots = eigen_P(part, dual)
    Q = eigen_Q(P, part.ring.size)
    return SchemeReport(part, dual, p_tensor, P, Q, row_slots, col_slots)


def spectrum_csv(rows: list[tuple[GaussInt, int]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["value_re", "value_im", "frequency"])
    for v, freq in rows:
        w.writerow([v.re, v.im, freq])
    return buf.getvalue()
