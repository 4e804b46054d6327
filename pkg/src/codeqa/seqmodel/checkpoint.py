"""Binary model checkpoints.

Layout: magic, little-endian u32 header length, JSON header (hyperparams,
both vocabularies with checksums, tensor shapes, payload digest), then the
parameter tensors as little-endian float32 in PARAM_ORDER.
"""

import hashlib
import json
import struct

import numpy as np

from .model import PARAM_ORDER, Hyper, QAModel
from .vocab import Vocabulary

MAGIC = b"CODEQA1\n"
FORMAT_VERSION = 1


class CorruptCheckpoint(RuntimeError):
    """Checkpoint fails magic/shape/checksum validation."""


def save_checkpoint(model: QAModel, path):
    payload = b"".join(
        np.ascontiguousarray(model.params[name]).astype("<f4").tobytes()
        for name in PARAM_ORDER
    )
    header = {
        "format_version": FORMAT_VERSION,
        "dtype": "float32",
        "hyper": model.hyper.to_dict(),
        "input_vocab": model.input_vocab.id_to_token,
        "output_vocab": model.output_vocab.id_to_token,
        "vocab_checksums": {
            "input": model.input_vocab.checksum(),
            "output": model.output_vocab.checksum(),
        },
        "tensors": [[name, list(model.params[name].shape)] for name in PARAM_ORDER],
        "payload_sha256": hashlib.sha256(payload).hexdigest(),
    }
    blob = json.dumps(header, sort_keys=True).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<I", len(blob)))
        fh.write(blob)
        fh.write(payload)


def load_checkpoint(path) -> QAModel:
    with open(path, "rb") as fh:
        data = fh.read()
    if not data.startswith(MAGIC):
        raise CorruptCheckpoint("bad magic")
    off = len(MAGIC)
    if len(data) < off + 4:
        raise CorruptCheckpoint("truncated header length")
    (hlen,) = struct.unpack_from("<I", data, off)
    off += 4
    if len(data) < off + hlen:
        raise CorruptCheckpoint("truncated header")
    try:
        header = json.loads(data[off : off + hlen].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CorruptCheckpoint("unreadable header: %s" % exc) from exc
    off += hlen
    if header.get("format_version") != FORMAT_VERSION:
        raise CorruptCheckpoint("unsupported format version %r" % header.get("format_version"))

    payload = data[off:]
    if hashlib.sha256(payload).hexdigest() != header.get("payload_sha256"):
        raise CorruptCheckpoint("payload checksum mismatch")

    input_vocab = Vocabulary(header["input_vocab"])
    output_vocab = Vocabulary(header["output_vocab"])
    sums = header.get("vocab_checksums", {})
    if input_vocab.checksum() != sums.get("input") or output_vocab.checksum() != sums.get("output"):
        raise CorruptCheckpoint("vocabulary checksum mismatch")

    hyper = Hyper(**header["hyper"])
    if hyper.dtype != "float32":
        raise CorruptCheckpoint("checkpoint dtype must be float32, got %r" % hyper.dtype)
    model = QAModel(input_vocab, output_vocab, hyper, seed=0)

    names = [t[0] for t in header["tensors"]]
    if names != list(PARAM_ORDER):
        raise CorruptCheckpoint("tensor list does not match the declared order")
    pos = 0
    for name, shape in header["tensors"]:
        shape = tuple(shape)
        if model.params[name].shape != shape:
            raise CorruptCheckpoint(
                "shape mismatch for %s: header %s, expected %s"
                % (name, shape, model.params[name].shape)
            )
        nbytes = int(np.prod(shape)) * 4
        chunk = payload[pos : pos + nbytes]
        if len(chunk) != nbytes:
            raise CorruptCheckpoint("truncated payload at tensor %s" % name)
        model.params[name] = np.frombuffer(chunk, dtype="<f4").reshape(shape).astype(np.float32)
        pos += nbytes
    if pos != len(payload):
        raise CorruptCheckpoint("trailing bytes after final tensor")
    return model


def checkpoint_digest(path):
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()
