import random

import pytest

import corpusgen
from codeqa.javatok import build_record
from codeqa.qagen import TooFewProjects, filter_corpus, is_non_descriptive, split_corpus


def _rec(rid, summary, project="p1", src=None):
    return build_record(rid, project, src or "int f%s() { return 1; }" % rid, summary)


def test_duplicate_summaries_second_dropped():
    a = _rec("a", "computes the running total")
    b = _rec("b", "computes the running total")
    stats = {}
    kept = filter_corpus([a, b], stats)
    assert [r.id for r in kept] == ["a"]
    assert stats["dropped_duplicate_summary"] == 1


def test_empty_input():
    assert filter_corpus([]) == []


def test_planted_duplicates_and_stubs():
    # 10 records: 3 planted duplicates and 2 stubs -> exactly 5 drops.
    base = [
        _rec("r%d" % i, "does useful thing number %d for the cache" % i) for i in range(5)
    ]
    dups = [
        _rec("d0", base[0].summary_raw),
        _rec("d1", base[1].summary_raw),
        _rec("d2", base[2].summary_raw),
    ]
    stubs = [_rec("s0", "todo"), _rec("s1", "auto-generated stub method body")]
    stats = {}
    kept = filter_corpus(base + dups + stubs, stats)
    assert len(kept) == 5
    assert stats["dropped_duplicate_summary"] == 3
    assert stats["dropped_non_descriptive"] == 2


def test_short_summary_non_descriptive():
    assert is_non_descriptive(["two", "words"])
    assert not is_non_descriptive(["three", "word", "summary"])


def test_empty_summary_kept():
    # Records without summaries survive the filter; Q5/Q6 skip them later.
    rec = _rec("e", "")
    assert filter_corpus([rec]) == [rec]
    assert not is_non_descriptive([])


def _uniform_records(n_projects=100, per_project=10, seed=0):
    rows = corpusgen.make_corpus(n_projects * per_project, n_projects, seed=seed)
    return [build_record(r["id"], r["project"], r["source"], r["summary"]) for r in rows]


def test_split_fractions_within_tolerance():
    records = _uniform_records()
    id_sets, project_split = split_corpus(records, seed=0)
    total = len(records)
    assert total == sum(len(v) for v in id_sets.values())
    assert abs(len(id_sets["train"]) / total - 0.90) <= 0.02
    assert abs(len(id_sets["val"]) / total - 0.05) <= 0.02
    assert abs(len(id_sets["test"]) / total - 0.05) <= 0.02


def test_split_project_disjoint():
    records = _uniform_records(n_projects=40, per_project=7, seed=2)
    id_sets, project_split = split_corpus(records, seed=5)
    assert id_sets["train"] & id_sets["val"] == set()
    assert id_sets["train"] & id_sets["test"] == set()
    assert id_sets["val"] & id_sets["test"] == set()
    by_id = {r.id: r.project for r in records}
    for name, ids in id_sets.items():
        for mid in ids:
            assert project_split[by_id[mid]] == name


def test_split_deterministic():
    records = _uniform_records(n_projects=30, per_project=5, seed=1)
    a, _ = split_corpus(records, seed=9)
    b, _ = split_corpus(records, seed=9)
    assert a == b
    c, _ = split_corpus(records, seed=10)
    assert a != c


def test_split_too_few_projects():
    records = _uniform_records(n_projects=2, per_project=5, seed=0)
    with pytest.raises(TooFewProjects):
        split_corpus(records, seed=0)


def test_split_every_bucket_nonempty_small_corpus():
    records = _uniform_records(n_projects=4, per_project=3, seed=0)
    id_sets, _ = split_corpus(records, seed=0)
    assert all(len(ids) > 0 for ids in id_sets.values())


def test_split_bad_ratios():
    records = _uniform_records(n_projects=5, per_project=2, seed=0)
    with pytest.raises(ValueError):
        split_corpus(records, ratios=(0.5, 0.2, 0.2), seed=0)


def test_split_varied_project_sizes_tolerance():
    rng = random.Random(3)
    rows = []
    for p in range(60):
        size = rng.randrange(2, 25)
        chunk = corpusgen.make_corpus(size, 1, seed=100 + p)
        for r in chunk:
            r = dict(r)
            r["project"] = "vp%02d" % p
            r["id"] = "vp%02d_%s" % (p, r["id"])
            rows.append(r)
    records = [build_record(r["id"], r["project"], r["source"], r["summary"]) for r in rows]
    id_sets, _ = split_corpus(records, seed=4)
    total = len(records)
    assert abs(len(id_sets["train"]) / total - 0.90) <= 0.02
