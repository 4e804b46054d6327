"""HTTP service: interactive QA over a loaded checkpoint, plus webchat assets."""

import time
from contextlib import asynccontextmanager
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from ..javatok import FUNCODE, MalformedMethod, build_record, detokenize, read_corpus, tokenize
from ..qagen import read_split
from ..evalkit import return_type_span, signature_span
from ..seqmodel import infer, load_checkpoint

SPLIT_NAMES = ("train", "val", "test")


class AskRequest(BaseModel):
    question: str
    method_id: Optional[str] = None
    source: Optional[str] = None
    summary: Optional[str] = None


def create_app(checkpoint_path, corpus_path=None, split_path=None, static_dir=None):
    """Build the FastAPI app. The model loads once at startup and is then
    immutable, so request handlers may run concurrently."""
    state = {"model": None, "records": {}, "splits": {}}

    def load():
        state["model"] = load_checkpoint(checkpoint_path)
        if corpus_path:
            records, _ = read_corpus(corpus_path)
            state["records"] = {rec.id: rec for rec in records}
        if split_path:
            id_sets, _ = read_split(split_path)
            state["splits"] = {
                mid: name for name, ids in id_sets.items() for mid in ids
            }

    @asynccontextmanager
    async def lifespan(app):
        if state["model"] is None:
            load()
        yield

    app = FastAPI(title="codeqa", lifespan=lifespan)

    def require_model():
        model = state["model"]
        if model is None:
            raise HTTPException(status_code=503, detail="model not loaded yet")
        return model

    @app.get("/api/health")
    def health():
        if state["model"] is None:
            raise HTTPException(status_code=503, detail="loading")
        return {"status": "ok", "methods": len(state["records"])}

    @app.get("/api/methods")
    def methods(split: Optional[str] = None, debug: bool = False):
        require_model()
        if split is not None and split not in SPLIT_NAMES:
            raise HTTPException(status_code=400, detail="unknown split %r" % split)
        out = []
        for rec in state["records"].values():
            rec_split = state["splits"].get(rec.id)
            if split is not None and rec_split != split:
                continue
            row = {
                "id": rec.id,
                "name": rec.features.name,
                "project": rec.project,
                "has_summary": bool(rec.features.summary),
                "split": rec_split,
            }
            if debug:
                row["source"] = rec.raw_source
            out.append(row)
        out.sort(key=lambda r: r["id"])
        return out

    @app.post("/api/ask")
    def ask(req: AskRequest):
        model = require_model()
        if (req.method_id is None) == (req.source is None):
            raise HTTPException(
                status_code=400, detail="exactly one of method_id / source is required"
            )
        if req.method_id is not None:
            rec = state["records"].get(req.method_id)
            if rec is None:
                raise HTTPException(status_code=404, detail="unknown method %r" % req.method_id)
        else:
            try:
                rec = build_record("adhoc", "adhoc", req.source, req.summary or "")
            except MalformedMethod as exc:
                raise HTTPException(status_code=400, detail="unparseable method: %s" % exc)
        question = tokenize(req.question)
        if not question:
            raise HTTPException(status_code=400, detail="empty question")

        t0 = time.perf_counter()
        tokens, trace, meta = infer(model, question, rec.context_tokens)
        elapsed_ms = (time.perf_counter() - t0) * 1000.0
        c_len = meta["context_len"]
        return {
            "answer_text": detokenize(tokens),
            "answer_tokens": tokens,
            "code_attn": trace.code_attn[:, :c_len].tolist(),
            "q_attn": trace.q_attn[:, : meta["question_len"]].tolist(),
            "context_tokens": rec.context_tokens[:c_len],
            "question_unk_fraction": meta["question_unk_fraction"],
            "low_confidence": meta["low_confidence"],
            "elapsed_ms": elapsed_ms,
            "spans": {
                "return_type": list(return_type_span(rec)),
                "signature": list(signature_span(rec)),
            },
            "funcode_expansion": rec.raw_source if FUNCODE in tokens else None,
            "method_id": rec.id,
        }

    if static_dir:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="webchat")

    app.state.loader = load  # exposed for tests
    return app
