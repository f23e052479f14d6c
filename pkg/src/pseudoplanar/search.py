"""Sharded, checkpointable exhaustive searches for pseudo-planar functions.

Two candidate spaces: all nonzero monomials c*x^t, and all quadratic-type
binomials c1*x^{2^i+2^j} + c2*x^{2^k+2^l} with distinct exponent pairs.
Candidate enumeration is a fixed deterministic bijection onto [0, total);
shard (k, K) owns the indices congruent to k mod K, so shard runs compose
to exactly the unsharded run.  Checkpoints are digest-protected JSON; every
reported hit is re-verified in a final single-threaded pass.
"""

from __future__ import annotations

import hashlib
import json
import warnings
from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .field import GF2n
from .functions import SparsePoly, is_pseudoplanar, known_hits_closure

CHECKPOINT_VERSION = 1
MONOMIAL_MAX_DEGREE = 12
BINOMIAL_LONG_RUN_DEGREE = 7


class CheckpointError(ValueError):
    pass


def quad_exponents(n: int) -> list[int]:
    """All exponents of the form 2^i + 2^j with 0 <= i < j < n, sorted."""
    return sorted((1 << i) + (1 << j) for i, j in combinations(range(n), 2))


@dataclass(frozen=True)
class SearchSpace:
    field: GF2n
    kind: str  # "monomial" | "quad_binomial"
    shard_index: int = 0
    shard_total: int = 1

    def __post_init__(self):
        if self.kind not in ("monomial", "quad_binomial"):
            raise ValueError(f"unknown search kind {self.kind!r}")
        if not 0 <= self.shard_index < self.shard_total:
            raise ValueError(
                f"shard {self.shard_index}/{self.shard_total} out of range"
            )

    @property
    def coeff_count(self) -> int:
        return self.field.order - 1

    @property
    def exponent_pairs(self) -> list[tuple[int, int]]:
        exps = quad_exponents(self.field.n)
        return [(e1, e2) for e1, e2 in combinations(exps, 2)]

    @property
    def total(self) -> int:
        nc = self.coeff_count
        if self.kind == "monomial":
            return (self.field.order - 1) * nc
        return len(self.exponent_pairs) * nc * nc

    def candidate(self, i: int) -> SparsePoly:
        """Decode candidate index i (lexicographic order) to a polynomial."""
        nc = self.coeff_count
        if self.kind == "monomial":
            t, c = divmod(i, nc)
            return SparsePoly.monomial(self.field, c + 1, t + 1)
        p, rem = divmod(i, nc * nc)
        c1, c2 = divmod(rem, nc)
        e1, e2 = self.exponent_pairs[p]
        return SparsePoly.make(self.field, [(e1, c1 + 1), (e2, c2 + 1)])

    def my_indices(self, start: int = 0):
        """Candidate indices owned by this shard, from global index start."""
        k, K = self.shard_index, self.shard_total
        first = start + ((k - start) % K)
        return range(first, self.total, K)

    def spec_dict(self) -> dict:
        return {
            "field": self.field.spec_string,
            "kind": self.kind,
            "shard": [self.shard_index, self.shard_total],
        }


@dataclass
class SearchResult:
    space: SearchSpace
    hit_indices: list[int] = dc_field(default_factory=list)

    def hits(self) -> list[SparsePoly]:
        return [self.space.candidate(i) for i in sorted(self.hit_indices)]


def merge_results(results: list[SearchResult]) -> SearchResult:
    """Combine shard results into the equivalent unsharded result."""
    if not results:
        raise ValueError("nothing to merge")
    base = results[0].space
    for r in results[1:]:
        if r.space.field != base.field or r.space.kind != base.kind:
            raise ValueError("cannot merge results from different spaces")
    merged = SearchSpace(base.field, base.kind)
    return SearchResult(merged, sorted(i for r in results for i in r.hit_indices))


# -- checkpoints --------------------------------------------------------------


def _digest(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def checkpoint_save(path, space: SearchSpace, next_index: int, hit_indices: list[int]):
    payload = {
        "version": CHECKPOINT_VERSION,
        **space.spec_dict(),
        "next": next_index,
        "hits": sorted(hit_indices),
    }
    payload["digest"] = _digest({k: v for k, v in payload.items()})
    with open(path, "w") as fh:
        json.dump(payload, fh)


def checkpoint_resume(path, space: SearchSpace) -> tuple[int, list[int]]:
    """Validated (next candidate index, hits so far) from a checkpoint file."""
    with open(path) as fh:
        payload = json.load(fh)
    stored = payload.pop("digest", None)
    if stored != _digest(payload):
        raise CheckpointError(f"checkpoint {path} is corrupt (digest mismatch)")
    if payload.get("version") != CHECKPOINT_VERSION:
        raise CheckpointError(f"unsupported checkpoint version {payload.get('version')}")
    for key, want in space.spec_dict().items():
        if payload.get(key) != want:
            raise CheckpointError(
                f"checkpoint {path} is for {key}={payload.get(key)!r}, "
                f"this run has {key}={want!r}"
            )
    return payload["next"], list(payload["hits"])


# -- drivers ------------------------------------------------------------------


def run_search(
    space: SearchSpace,
    checkpoint_path=None,
    checkpoint_every: int = 50000,
    long_run: bool = False,
) -> SearchResult:
    """Exhaust the shard, re-verify every hit, and return the result."""
    n = space.field.n
    if space.kind == "monomial" and n > MONOMIAL_MAX_DEGREE:
        raise ValueError(
            f"full monomial searches are capped at n <= {MONOMIAL_MAX_DEGREE}"
        )
    if space.kind == "quad_binomial" and n >= BINOMIAL_LONG_RUN_DEGREE and not long_run:
        raise ValueError(
            f"quadratic binomial search at n = {n} covers {space.total} "
            f"candidates; pass long_run (--long-run) to proceed"
        )
    start, hit_indices = 0, []
    if checkpoint_path is not None:
        try:
            start, hit_indices = checkpoint_resume(checkpoint_path, space)
        except FileNotFoundError:
            pass
    since_save = 0
    for i in space.my_indices(start):
        if is_pseudoplanar(space.candidate(i)):
            hit_indices.append(i)
        since_save += 1
        if checkpoint_path is not None and since_save >= checkpoint_every:
            checkpoint_save(checkpoint_path, space, i + 1, hit_indices)
            since_save = 0
    if checkpoint_path is not None:
        checkpoint_save(checkpoint_path, space, space.total, hit_indices)
    result = SearchResult(space, sorted(hit_indices))
    _reverify(result)
    return result


def _reverify(result: SearchResult) -> None:
    for f in result.hits():
        if not is_pseudoplanar(f):
            raise AssertionError(
                f"re-verification failed for reported hit {f.literal}"
            )


def search_monomials(
    field: GF2n, shard: tuple[int, int] = (0, 1), checkpoint_path=None
) -> SearchResult:
    """All pseudo-planar monomials c*x^t; unexpected hits are flagged.

    A hit outside the known families (x^{2^k}, the half-field Gold-type
    exponent, the 4^k(4^k+1) family) would contradict the conjectured
    classification and is reported with a loud warning, never dropped.
    """
    space = SearchSpace(field, "monomial", *shard)
    result = run_search(space, checkpoint_path=checkpoint_path)
    for c, t in unexpected_monomials(field, result):
        warnings.warn(
            f"CONJECTURE COUNTEREXAMPLE: {c:#x}*x^{t} on {field.spec_string} "
            "is pseudo-planar but outside the known monomial families",
            stacklevel=2,
        )
    return result


def unexpected_monomials(field: GF2n, result: SearchResult) -> list[tuple[int, int]]:
    """Hits not explained by the known families (up to the scaling orbit)."""
    predicted = known_hits_closure(field)
    out = []
    for f in result.hits():
        (t, c), = f.terms
        if (c, t) not in predicted:
            out.append((c, t))
    return sorted(out)


def search_quad_binomials(
    field: GF2n,
    shard: tuple[int, int] = (0, 1),
    checkpoint_path=None,
    long_run: bool = False,
) -> SearchResult:
    space = SearchSpace(field, "quad_binomial", *shard)
    return run_search(space, checkpoint_path=checkpoint_path, long_run=long_run)
