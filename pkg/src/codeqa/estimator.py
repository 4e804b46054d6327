"""sklearn-style estimator wrapping the seq2seq question answerer.

Keeps the conventional fit/predict/get_params surface so the model slots
into pipelines and grid searches; the heavy lifting lives in seqmodel.
"""

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .javatok import detokenize, tokenize
from .qagen import QATuple
from .seqmodel import (
    Adam,
    Hyper,
    QAModel,
    build_vocab,
    infer,
    make_batch,
    prepare_tuples,
    train_epoch,
)


class SubroutineQA(BaseEstimator):
    """Attentional encoder-decoder for questions about known methods.

    fit() consumes QATuple training examples; predict() maps (question,
    context) pairs to answer strings. All constructor arguments are
    hyperparameters in the sklearn sense.
    """

    def __init__(
        self,
        d_emb=128,
        d_hid=256,
        max_q_len=20,
        max_c_len=200,
        max_a_len=30,
        vocab_in=10000,
        vocab_out=5000,
        batch_size=64,
        epochs=10,
        lr=1e-3,
        clip_norm=5.0,
        seed=0,
        dtype="float32",
        verbose=0,
    ):
        self.d_emb = d_emb
        self.d_hid = d_hid
        self.max_q_len = max_q_len
        self.max_c_len = max_c_len
        self.max_a_len = max_a_len
        self.vocab_in = vocab_in
        self.vocab_out = vocab_out
        self.batch_size = batch_size
        self.epochs = epochs
        self.lr = lr
        self.clip_norm = clip_norm
        self.seed = seed
        self.dtype = dtype
        self.verbose = verbose

    def _hyper(self):
        return Hyper(
            d_emb=self.d_emb,
            d_hid=self.d_hid,
            max_q_len=self.max_q_len,
            max_c_len=self.max_c_len,
            max_a_len=self.max_a_len,
            dtype=self.dtype,
        )

    def fit(self, X, y=None):
        """Train on a list of QATuple examples by teacher forcing."""
        tuples = self._validate_tuples(X)
        self.input_vocab_, self.output_vocab_ = build_vocab(tuples, self.vocab_in, self.vocab_out)
        self.model_ = QAModel(self.input_vocab_, self.output_vocab_, self._hyper(), seed=self.seed)
        optimizer = Adam(lr=self.lr, clip_norm=self.clip_norm)
        rng = np.random.Generator(np.random.PCG64(self.seed))
        prepared = prepare_tuples(self.model_, tuples)
        self.history_ = []
        for epoch in range(self.epochs):
            metrics = train_epoch(self.model_, prepared, optimizer, rng, self.batch_size)
            metrics["epoch"] = epoch
            self.history_.append(metrics)
            if self.verbose:
                print(
                    "epoch %3d  loss %.4f  token_acc %.4f"
                    % (epoch, metrics["loss"], metrics["token_acc"])
                )
        return self

    def predict(self, X):
        """Answer strings for (question tokens-or-text, context tokens) pairs."""
        return [detokenize(tokens) for tokens, _, _ in self._predict_raw(X)]

    def predict_with_trace(self, X):
        """(answer tokens, AttentionTrace, meta) triples for each pair."""
        return self._predict_raw(X)

    def score(self, X, y=None):
        """Teacher-forced token accuracy over QATuple examples."""
        self._require_fitted()
        tuples = self._validate_tuples(X)
        prepared = prepare_tuples(self.model_, tuples)
        q_ids, c_ids, a_in, a_tgt = make_batch(prepared, list(range(len(prepared))))
        _, acc, _ = self.model_.teacher_forced(q_ids, c_ids, a_in, a_tgt)
        return acc

    def _predict_raw(self, X):
        self._require_fitted()
        out = []
        for pair in X:
            if isinstance(pair, QATuple):
                question, context = pair.question, pair.context
            else:
                question, context = pair
            if isinstance(question, str):
                question = tokenize(question)
            out.append(infer(self.model_, question, context))
        return out

    def _require_fitted(self):
        if not hasattr(self, "model_"):
            raise NotFittedError("SubroutineQA must be fit before use")

    @staticmethod
    def _validate_tuples(X):
        tuples = list(X)
        if not tuples:
            raise ValueError("training data is empty")
        for t in tuples:
            if not isinstance(t, QATuple):
                raise TypeError("expected QATuple examples, got %r" % type(t).__name__)
        return tuples
