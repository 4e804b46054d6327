"""One-off calibration driver for the desk-scale run (not a test)."""

import sys
import time

import corpusgen
from codeqa.estimator import SubroutineQA
from codeqa.evalkit import evaluate_split, q1_focus_rate, qualitative_ordering_ok
from codeqa.javatok import build_record
from codeqa.qagen import generate_corpus, load_templates, split_corpus


def run(n_methods=2000, n_projects=100, seed=11, epochs=12, d_emb=128, d_hid=256, batch=64):
    t0 = time.time()
    rows = corpusgen.make_corpus(n_methods, n_projects, seed=seed)
    recs = [build_record(r["id"], r["project"], r["source"], r["summary"]) for r in rows]
    by_id = {r.id: r for r in recs}
    tuples, _ = generate_corpus(recs, load_templates(), seed=seed)
    id_sets, _ = split_corpus(recs, seed=seed)
    train = [t for t in tuples if t.method_id in id_sets["train"]]
    test = [t for t in tuples if t.method_id in id_sets["test"]]
    print("train %d test %d  (prep %.1fs)" % (len(train), len(test), time.time() - t0), flush=True)

    est = SubroutineQA(
        d_emb=d_emb, d_hid=d_hid, epochs=epochs, batch_size=batch, seed=seed, verbose=1
    )
    t0 = time.time()
    est.fit(train)
    print("trained in %.1fs" % (time.time() - t0), flush=True)

    t0 = time.time()
    report = evaluate_split(est.model_, test, by_id)
    focus, n_focus = q1_focus_rate(est.model_, test, by_id)
    print("eval in %.1fs" % (time.time() - t0), flush=True)
    print(report.to_table())
    print("in-vocab rates:", {k: round(v, 3) for k, v in report.rates(invocab=True).items()})
    print("raw rates:     ", {k: round(v, 3) for k, v in report.rates().items()})
    print("q1 focus %.3f over %d" % (focus, n_focus))
    print("ordering(raw) ok:", qualitative_ordering_ok(report.rates()))
    return report


if __name__ == "__main__":
    kwargs = {}
    for arg in sys.argv[1:]:
        k, v = arg.split("=")
        kwargs[k] = int(v)
    run(**kwargs)
