import pytest

import corpusgen
from codeqa.estimator import SubroutineQA
from codeqa.javatok import build_record
from codeqa.qagen import generate_corpus, load_templates, split_corpus


@pytest.fixture(scope="session")
def templates():
    return load_templates()


@pytest.fixture(scope="session")
def small_records():
    rows = corpusgen.make_corpus(150, 8, seed=3)
    return [build_record(r["id"], r["project"], r["source"], r["summary"]) for r in rows]


@pytest.fixture(scope="session")
def small_tuples(small_records, templates):
    tuples, _ = generate_corpus(small_records, templates, seed=3)
    return tuples


@pytest.fixture(scope="session")
def small_split(small_records):
    id_sets, _ = split_corpus(small_records, seed=3)
    return id_sets


@pytest.fixture(scope="session")
def records_by_id(small_records):
    return {r.id: r for r in small_records}


@pytest.fixture(scope="session")
def trained_small(small_tuples, small_split):
    """A quickly trained small model; good enough for plumbing tests."""
    train = [t for t in small_tuples if t.method_id in small_split["train"]]
    est = SubroutineQA(d_emb=48, d_hid=96, epochs=8, batch_size=32, seed=3)
    est.fit(train)
    return est
