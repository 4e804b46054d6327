"""Command line for the full pipeline: gen, split, train, eval, ask, serve, gradcheck."""

import argparse
import json
import sys
from collections import Counter

from ..estimator import SubroutineQA
from ..evalkit import evaluate_split, q1_focus_rate, qualitative_ordering_ok
from ..javatok import FUNCODE, MalformedMethod, build_record, detokenize, read_corpus, tokenize
from ..qagen import (
    TemplateError,
    TooFewProjects,
    filter_corpus,
    generate_corpus,
    load_templates,
    read_split,
    read_tuples,
    split_corpus,
    write_split,
    write_tuples,
)
from ..seqmodel import (
    CorruptCheckpoint,
    EmptyCorpus,
    NonFiniteLoss,
    grad_check,
    infer,
    load_checkpoint,
    make_tiny_setup,
    save_checkpoint,
)
from .config import ConfigError, RunConfig
from .manifest import ManifestMismatch, read_manifest, verify_inputs, verify_seed, write_manifest

GRADCHECK_TOLERANCE = 1e-4


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "func"):
        parser.print_help()
        return 2
    try:
        return args.func(args) or 0
    except (ConfigError, ManifestMismatch) as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return 2
    except (TemplateError, TooFewProjects, EmptyCorpus, MalformedMethod) as exc:
        print("data error: %s" % exc, file=sys.stderr)
        return 1
    except (CorruptCheckpoint, NonFiniteLoss) as exc:
        print("model error: %s" % exc, file=sys.stderr)
        return 1
    except OSError as exc:
        print("io error: %s" % exc, file=sys.stderr)
        return 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="codeqa",
        description="Question answering about Java methods: dataset synthesis, "
        "training, evaluation, and interactive serving.",
    )
    sub = parser.add_subparsers(dest="command")

    def add(name, help_text, func):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="JSON config file (CODEQA_* env vars override it)")
        p.add_argument("--seed", type=int, help="run seed")
        p.add_argument("--force", action="store_true", help="proceed despite manifest mismatches")
        p.set_defaults(func=func)
        return p

    p = add("gen", "generate question/answer/context tuples from a method corpus", cmd_gen)
    p.add_argument("--corpus", help="input corpus JSONL")
    p.add_argument("--templates", help="template file (default: packaged)")
    p.add_argument("--out", dest="tuples", help="output tuples JSONL")
    p.add_argument("--no-negatives", action="store_true", help="skip Q6 negative examples")

    p = add("split", "project-disjoint train/val/test split", cmd_split)
    p.add_argument("--corpus", help="input corpus JSONL")
    p.add_argument("--out", dest="split", help="output split JSON")

    p = add("train", "train the seq2seq model on the train split", cmd_train)
    p.add_argument("--corpus", help="corpus JSONL (unused, accepted for symmetry)")
    p.add_argument("--tuples", help="tuples JSONL")
    p.add_argument("--split", help="split JSON")
    p.add_argument("--out", dest="checkpoint", help="output checkpoint path")
    p.add_argument("--epochs", type=int)
    p.add_argument("--batch-size", dest="batch_size", type=int)
    p.add_argument("--lr", type=float)
    p.add_argument("--d-emb", dest="d_emb", type=int)
    p.add_argument("--d-hid", dest="d_hid", type=int)
    p.add_argument("--vocab-in", dest="vocab_in", type=int)
    p.add_argument("--vocab-out", dest="vocab_out", type=int)
    p.add_argument("--max-context", dest="max_c_len", type=int)

    p = add("eval", "score the test split and report per-type correctness", cmd_eval)
    p.add_argument("--corpus", help="corpus JSONL")
    p.add_argument("--tuples", help="tuples JSONL")
    p.add_argument("--split", help="split JSON")
    p.add_argument("--checkpoint", help="trained checkpoint")
    p.add_argument("--out", dest="report", help="output report JSON")

    p = add("ask", "answer one question about one method", cmd_ask)
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--corpus", help="corpus JSONL when asking by --method-id")
    p.add_argument("--method-id", help="method id from the corpus")
    p.add_argument("--source-file", help="file with raw method source")
    p.add_argument("--summary", default="", help="optional summary for --source-file")
    p.add_argument("--question", required=True)
    p.add_argument("--show-attention", action="store_true", help="print an attention strip")

    p = add("serve", "serve the HTTP API and webchat", cmd_serve)
    p.add_argument("--checkpoint", help="trained checkpoint")
    p.add_argument("--corpus", help="corpus JSONL")
    p.add_argument("--split", help="split JSON (adds split labels to /api/methods)")
    p.add_argument("--host")
    p.add_argument("--port", type=int)
    p.add_argument("--static-dir", dest="static_dir", help="webchat bundle directory")

    p = add("gradcheck", "verify backpropagation against finite differences", cmd_gradcheck)
    p.add_argument("--models", type=int, default=3, help="number of random tiny models")
    p.add_argument("--epsilon", type=float, default=1e-5)

    return parser


_CONFIG_FIELDS = (
    "seed", "corpus", "templates", "tuples", "split", "checkpoint", "report",
    "epochs", "batch_size", "lr", "d_emb", "d_hid", "vocab_in", "vocab_out",
    "max_c_len", "host", "port", "static_dir",
)


def _config(args):
    overrides = {}
    for name in _CONFIG_FIELDS:
        if hasattr(args, name) and getattr(args, name) is not None:
            overrides[name] = getattr(args, name)
    if getattr(args, "no_negatives", False):
        overrides["negatives"] = False
    return RunConfig.load(args.config, overrides=overrides)


def cmd_gen(args):
    cfg = _config(args)
    records, ingest_stats = read_corpus(cfg.corpus)
    filter_stats = {}
    records = filter_corpus(records, filter_stats)
    templates = load_templates(cfg.templates or None)
    tuples, skip_log = generate_corpus(records, templates, cfg.seed, negatives=cfg.negatives)
    write_tuples(cfg.tuples, tuples)

    counts = Counter(t.qtype.value for t in tuples)
    q6 = Counter(
        "no" if t.is_negative else "yes" for t in tuples if t.qtype.value == "Q6"
    )
    inputs = {"corpus": cfg.corpus}
    if cfg.templates:
        inputs["templates"] = cfg.templates
    write_manifest(
        cfg.tuples,
        "tuples",
        cfg,
        inputs=inputs,
        template_checksum=templates.checksum,
        counts=dict(sorted(counts.items())),
        q6_balance=dict(sorted(q6.items())),
        skips=dict(sorted(skip_log.counts.items())),
        ingest_stats=ingest_stats,
        filter_stats=filter_stats,
    )
    print(
        "gen: %d records -> %d tuples (%s); %d skips"
        % (
            len(records),
            len(tuples),
            " ".join("%s=%d" % kv for kv in sorted(counts.items())),
            skip_log.total(),
        )
    )
    print("tuples written to %s" % cfg.tuples)


def cmd_split(args):
    cfg = _config(args)
    records, _ = read_corpus(cfg.corpus)
    id_sets, project_split = split_corpus(records, cfg.ratios(), cfg.seed)
    write_split(cfg.split, id_sets, project_split)
    counts = {name: len(ids) for name, ids in id_sets.items()}
    total = sum(counts.values())
    write_manifest(
        cfg.split, "split", cfg, inputs={"corpus": cfg.corpus},
        method_counts=counts,
        fractions={name: (n / total if total else 0.0) for name, n in counts.items()},
    )
    print(
        "split: %s (projects train/val/test = %d/%d/%d)"
        % (
            " ".join("%s=%d" % (k, v) for k, v in sorted(counts.items())),
            sum(1 for s in project_split.values() if s == "train"),
            sum(1 for s in project_split.values() if s == "val"),
            sum(1 for s in project_split.values() if s == "test"),
        )
    )


def _check_chain(cfg, artifacts, force):
    """Every artifact pair must agree on the corpus it came from."""
    shas = {}
    for path in artifacts:
        manifest = read_manifest(path)
        if manifest and "corpus" in manifest.get("inputs", {}):
            shas[path] = manifest["inputs"]["corpus"]["sha256"]
    distinct = set(shas.values())
    if len(distinct) > 1:
        msg = "artifacts disagree on their corpus: %s" % json.dumps(shas, sort_keys=True)
        if not force:
            raise ManifestMismatch(msg)
        print("warning: %s" % msg, file=sys.stderr)


def cmd_train(args):
    cfg = _config(args)
    verify_seed(cfg.tuples, cfg, force=args.force)
    _check_chain(cfg, [cfg.tuples, cfg.split], force=args.force)
    tuples = read_tuples(cfg.tuples)
    id_sets, _ = read_split(cfg.split)
    train_tuples = [t for t in tuples if t.method_id in id_sets["train"]]
    val_tuples = [t for t in tuples if t.method_id in id_sets["val"]]
    if not train_tuples:
        raise EmptyCorpus("no train-split tuples")
    print("train: %d tuples, %d epochs" % (len(train_tuples), cfg.epochs))
    est = SubroutineQA(
        d_emb=cfg.d_emb,
        d_hid=cfg.d_hid,
        max_q_len=cfg.max_q_len,
        max_c_len=cfg.max_c_len,
        max_a_len=cfg.max_a_len,
        vocab_in=cfg.vocab_in,
        vocab_out=cfg.vocab_out,
        batch_size=cfg.batch_size,
        epochs=cfg.epochs,
        lr=cfg.lr,
        clip_norm=cfg.clip_norm,
        seed=cfg.seed,
        verbose=1,
    )
    est.fit(train_tuples)
    val_acc = est.score(val_tuples) if val_tuples else None
    save_checkpoint(est.model_, cfg.checkpoint)
    write_manifest(
        cfg.checkpoint,
        "checkpoint",
        cfg,
        inputs={"tuples": cfg.tuples, "split": cfg.split},
        final_train=est.history_[-1],
        val_token_acc=val_acc,
        vocab_sizes={"input": len(est.input_vocab_), "output": len(est.output_vocab_)},
    )
    print("checkpoint written to %s" % cfg.checkpoint)
    if val_acc is not None:
        print("val token accuracy %.4f" % val_acc)


def cmd_eval(args):
    cfg = _config(args)
    verify_inputs(cfg.checkpoint, {"tuples": cfg.tuples, "split": cfg.split}, force=args.force)
    _check_chain(cfg, [cfg.tuples, cfg.split], force=args.force)
    model = load_checkpoint(cfg.checkpoint)
    tuples = read_tuples(cfg.tuples)
    id_sets, _ = read_split(cfg.split)
    records, _ = read_corpus(cfg.corpus)
    records_by_id = {rec.id: rec for rec in records}
    test_tuples = [t for t in tuples if t.method_id in id_sets["test"]]
    report = evaluate_split(model, test_tuples, records_by_id)
    focus_rate, focus_n = q1_focus_rate(model, test_tuples, records_by_id)
    rates = report.rates(invocab=True)
    payload = report.to_dict()
    payload["q1_attention_focus"] = {"rate": focus_rate, "n": focus_n}
    payload["qualitative_ordering_ok"] = qualitative_ordering_ok(rates)
    with open(cfg.report, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")
    with open(cfg.report + ".txt", "w", encoding="utf-8") as fh:
        fh.write(report.to_table() + "\n")
        fh.write("q1 attention focus %.3f over %d\n" % (focus_rate, focus_n))
    write_manifest(
        cfg.report,
        "report",
        cfg,
        inputs={"checkpoint": cfg.checkpoint, "tuples": cfg.tuples, "split": cfg.split},
        n_test_tuples=len(test_tuples),
    )
    print(report.to_table())
    print("q1 attention focus %.3f over %d queries" % (focus_rate, focus_n))
    print("report written to %s" % cfg.report)


def cmd_ask(args):
    cfg = _config(args)
    if bool(args.method_id) == bool(args.source_file):
        raise ConfigError("give exactly one of --method-id / --source-file")
    model = load_checkpoint(args.checkpoint)
    if args.method_id:
        if not args.corpus and not cfg.corpus:
            raise ConfigError("--method-id needs --corpus")
        records, _ = read_corpus(args.corpus or cfg.corpus)
        matches = [r for r in records if r.id == args.method_id]
        if not matches:
            raise ConfigError("method %r not in corpus" % args.method_id)
        rec = matches[0]
    else:
        with open(args.source_file, "r", encoding="utf-8") as fh:
            rec = build_record("adhoc", "adhoc", fh.read(), args.summary)
    question = tokenize(args.question)
    tokens, trace, meta = infer(model, question, rec.context_tokens)
    print(detokenize(tokens))
    if FUNCODE in tokens:
        print("--- definition ---")
        print(rec.raw_source)
    if meta["low_confidence"]:
        print(
            "note: %.0f%% of the question is out of vocabulary"
            % (100 * meta["question_unk_fraction"]),
            file=sys.stderr,
        )
    if args.show_attention and trace.code_attn.shape[0] > 0:
        row = trace.code_attn[-1][: meta["context_len"]]
        top = sorted(range(len(row)), key=lambda i: -row[i])[:5]
        print("--- final-step code attention (top 5) ---")
        for i in sorted(top):
            print("%4d  %-20s %.3f" % (i, rec.context_tokens[i], row[i]))


def cmd_serve(args):
    from .app import create_app  # deferred: uvicorn/fastapi only needed here
    import uvicorn

    cfg = _config(args)
    app = create_app(
        cfg.checkpoint,
        corpus_path=cfg.corpus or None,
        split_path=cfg.split if args.split else None,
        static_dir=cfg.static_dir or None,
    )
    print("serving on http://%s:%d" % (cfg.host, cfg.port))
    uvicorn.run(app, host=cfg.host, port=cfg.port, log_level="warning")


def cmd_gradcheck(args):
    worst = 0.0
    for seed in range(args.models):
        model, q_ids, c_ids, a_in, a_tgt = make_tiny_setup(seed=seed)
        err = grad_check(model, q_ids, c_ids, a_in, a_tgt, epsilon=args.epsilon)
        worst = max(worst, err)
        print("model seed=%d  max relative error %.3e" % (seed, err))
    if worst >= GRADCHECK_TOLERANCE:
        print("gradcheck FAILED: %.3e >= %.0e" % (worst, GRADCHECK_TOLERANCE), file=sys.stderr)
        return 1
    print("gradcheck ok: %.3e < %.0e" % (worst, GRADCHECK_TOLERANCE))
    return 0


if __name__ == "__main__":
    sys.exit(main())
