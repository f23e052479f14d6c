"""Exhaustive searches: enumeration, sharding, checkpoints, conjecture flags."""

import json
import warnings

import pytest

from pseudoplanar.field import GF2n
from pseudoplanar.functions import known_hits_closure
from pseudoplanar.search import (
    CheckpointError,
    SearchResult,
    SearchSpace,
    checkpoint_resume,
    checkpoint_save,
    merge_results,
    quad_exponents,
    run_search,
    search_monomials,
    search_quad_binomials,
    unexpected_monomials,
)


def test_quad_exponents():
    assert quad_exponents(3) == [3, 5, 6]
    assert quad_exponents(4) == [3, 5, 6, 9, 10, 12]
    assert len(quad_exponents(6)) == 15


def test_candidate_enumeration_is_a_bijection():
    for kind in ("monomial", "quad_binomial"):
        space = SearchSpace(GF2n(3), kind)
        seen = {space.candidate(i).literal for i in range(space.total)}
        assert len(seen) == space.total
    mono = SearchSpace(GF2n(3), "monomial")
    assert mono.total == 49
    quad = SearchSpace(GF2n(3), "quad_binomial")
    assert quad.total == 3 * 49  # 3 exponent pairs, 7*7 coefficient pairs


def test_shard_indices_partition_the_space():
    space = SearchSpace(GF2n(4), "monomial")
    K = 5
    owned = [
        list(SearchSpace(GF2n(4), "monomial", k, K).my_indices()) for k in range(K)
    ]
    flat = sorted(i for part in owned for i in part)
    assert flat == list(range(space.total))
    with pytest.raises(ValueError):
        SearchSpace(GF2n(4), "monomial", 5, 5)
    with pytest.raises(ValueError):
        SearchSpace(GF2n(4), "bogus")


def test_monomial_search_matches_known_closure():
    fld = GF2n(4)
    with warnings.catch_warnings():
        warnings.simplefilter("error")  # any conjecture warning is a failure
        result = search_monomials(fld)
    hits = {(c, t) for f in result.hits() for t, c in f.terms}
    assert hits == known_hits_closure(fld)
    assert len(hits) == 65
    assert unexpected_monomials(fld, result) == []


def test_shard_merge_equals_unsharded():
    fld = GF2n(4)
    full = search_monomials(fld)
    K = 4
    parts = [search_monomials(fld, shard=(k, K)) for k in range(K)]
    merged = merge_results(parts)
    assert merged.hit_indices == full.hit_indices
    with pytest.raises(ValueError):
        merge_results([])
    other = search_monomials(GF2n(3))
    with pytest.raises(ValueError):
        merge_results([full, other])


def test_checkpoint_roundtrip_and_resume(tmp_path):
    fld = GF2n(4)
    space = SearchSpace(fld, "monomial")
    path = tmp_path / "ck.json"
    # interrupted run: save midway, then resume must give identical results
    full = run_search(space)
    checkpoint_save(path, space, 100, [i for i in full.hit_indices if i < 100])
    resumed = run_search(space, checkpoint_path=path)
    assert resumed.hit_indices == full.hit_indices
    # final checkpoint marks the space exhausted
    nxt, hits = checkpoint_resume(path, space)
    assert nxt == space.total
    assert hits == full.hit_indices


def test_checkpoint_corruption_and_mismatch(tmp_path):
    fld = GF2n(4)
    space = SearchSpace(fld, "monomial")
    path = tmp_path / "ck.json"
    checkpoint_save(path, space, 7, [3])
    # bit-flip the payload
    data = json.loads(path.read_text())
    data["next"] = 8
    path.write_text(json.dumps(data))
    with pytest.raises(CheckpointError, match="corrupt"):
        checkpoint_resume(path, space)
    # a valid checkpoint for a different space is refused
    checkpoint_save(path, space, 7, [3])
    with pytest.raises(CheckpointError):
        checkpoint_resume(path, SearchSpace(GF2n(3), "monomial"))
    with pytest.raises(CheckpointError):
        checkpoint_resume(path, SearchSpace(fld, "quad_binomial"))
    with pytest.raises(CheckpointError):
        checkpoint_resume(path, SearchSpace(fld, "monomial", 1, 2))


def test_binomial_search_small_fields():
    # n = 3: the binomial x^3 + x^6 and friends exist; n = 4 and 5 are empty
    hits3 = search_quad_binomials(GF2n(3)).hits()
    assert any(f.literal == "3:1,6:1" for f in hits3)
    assert search_quad_binomials(GF2n(4)).hits() == []
    assert search_quad_binomials(GF2n(5)).hits() == []


def test_long_run_gate():
    with pytest.raises(ValueError, match="long_run"):
        search_quad_binomials(GF2n(7))
    with pytest.raises(ValueError, match="capped"):
        run_search(SearchSpace(GF2n(13), "monomial"))


def test_conjecture_flagging_fires_on_planted_hit():
    fld = GF2n(4)
    space = SearchSpace(fld, "monomial")
    # plant x^3 (index of t=3, c=1): not pseudo-planar, not in the closure
    planted = (3 - 1) * space.coeff_count + 0
    assert space.candidate(planted).literal == "3:1"
    fake = SearchResult(space, [planted])
    assert unexpected_monomials(fld, fake) == [(1, 3)]


def test_reverification_catches_bad_hits():
    fld = GF2n(4)
    space = SearchSpace(fld, "monomial")
    from pseudoplanar.search import _reverify

    bad = SearchResult(space, [(3 - 1) * space.coeff_count])  # x^3, not pp
    with pytest.raises(AssertionError, match="re-verification"):
        _reverify(bad)
