"""From-scratch 3-input attentional encoder-decoder and its training stack."""

from .checkpoint import CorruptCheckpoint, checkpoint_digest, load_checkpoint, save_checkpoint
from .gradcheck import grad_check, make_tiny_setup
from .infer import UNK_CONFIDENCE_THRESHOLD, AttentionTrace, infer
from .kernels import clip_gradients, masked_softmax, sigmoid, softmax_cross_entropy
from .model import PARAM_ORDER, Hyper, QAModel, ShapeMismatch
from .train import Adam, NonFiniteLoss, iter_batches, make_batch, prepare_tuples, train_epoch
from .vocab import PAD, RESERVED, UNK, EmptyCorpus, Vocabulary, build_vocab

__all__ = [
    "Adam", "AttentionTrace", "CorruptCheckpoint", "EmptyCorpus", "Hyper",
    "NonFiniteLoss", "PAD", "PARAM_ORDER", "QAModel", "RESERVED",
    "ShapeMismatch", "UNK", "UNK_CONFIDENCE_THRESHOLD", "Vocabulary",
    "build_vocab", "checkpoint_digest", "clip_gradients", "grad_check",
    "infer", "iter_batches", "load_checkpoint", "make_batch", "make_tiny_setup",
    "masked_softmax", "prepare_tuples", "save_checkpoint", "sigmoid",
    "softmax_cross_entropy", "train_epoch",
]
