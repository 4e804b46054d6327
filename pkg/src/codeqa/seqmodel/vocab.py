"""Frequency-capped vocabularies with fixed reserved ids."""

import hashlib
from collections import Counter

from ..javatok import END, FUNCODE, NEWLINE, PAD_TOKEN, START, UNK_TOKEN

PAD = 0
UNK = 1

# Reserved tokens occupy fixed ids in every vocabulary.
RESERVED = (PAD_TOKEN, UNK_TOKEN, START, END, FUNCODE, NEWLINE)


class EmptyCorpus(ValueError):
    """No tuples to build vocabularies from."""


class Vocabulary:
    def __init__(self, tokens):
        """tokens: full id-ordered token list, reserved block included."""
        self.id_to_token = list(tokens)
        self.token_to_id = {t: i for i, t in enumerate(self.id_to_token)}
        if len(self.token_to_id) != len(self.id_to_token):
            raise ValueError("duplicate tokens in vocabulary")
        for i, t in enumerate(RESERVED):
            if self.id_to_token[i] != t:
                raise ValueError("reserved token %r missing from id %d" % (t, i))

    def __len__(self):
        return len(self.id_to_token)

    def encode(self, tokens, max_len=None):
        """Map tokens to ids (UNK for unknowns), padding/truncating to max_len."""
        ids = [self.token_to_id.get(t, UNK) for t in tokens]
        if max_len is not None:
            ids = ids[:max_len] + [PAD] * (max_len - len(ids))
        return ids

    def decode(self, ids, strip_pad=True):
        toks = [self.id_to_token[i] for i in ids]
        if strip_pad:
            toks = [t for t in toks if t != PAD_TOKEN]
        return toks

    def unk_fraction(self, tokens):
        if not tokens:
            return 0.0
        return sum(1 for t in tokens if t not in self.token_to_id) / len(tokens)

    def checksum(self):
        return hashlib.sha256("\n".join(self.id_to_token).encode("utf-8")).hexdigest()

    @classmethod
    def from_counts(cls, counts, max_size):
        """Admit tokens by descending frequency, ties broken lexicographically."""
        if max_size < len(RESERVED):
            raise ValueError("max_size %d < %d reserved tokens" % (max_size, len(RESERVED)))
        free = sorted(
            (t for t in counts if t not in RESERVED),
            key=lambda t: (-counts[t], t),
        )
        return cls(list(RESERVED) + free[: max_size - len(RESERVED)])


def build_vocab(tuples, max_in, max_out):
    """Input vocab over question+context tokens, output vocab over answers."""
    if not tuples:
        raise EmptyCorpus("no tuples")
    in_counts = Counter()
    out_counts = Counter()
    for t in tuples:
        in_counts.update(t.question)
        in_counts.update(t.context)
        out_counts.update(t.answer)
    return (
        Vocabulary.from_counts(in_counts, max_in),
        Vocabulary.from_counts(out_counts, max_out),
    )
