"""Run configuration: file, environment, and CLI flag layering."""

import dataclasses
import json
import os
from dataclasses import dataclass

ENV_PREFIX = "CODEQA_"


class ConfigError(ValueError):
    """Bad configuration value or file."""


@dataclass
class RunConfig:
    """Everything a full pipeline run depends on; embedded in manifests."""

    seed: int = 0
    # artifact paths
    corpus: str = "corpus.jsonl"
    templates: str = ""  # empty = packaged default template file
    tuples: str = "tuples.jsonl"
    split: str = "splits.json"
    checkpoint: str = "model.ckpt"
    report: str = "report.json"
    # model hyperparameters
    d_emb: int = 128
    d_hid: int = 256
    max_q_len: int = 20
    max_c_len: int = 200
    max_a_len: int = 30
    vocab_in: int = 10000
    vocab_out: int = 5000
    batch_size: int = 64
    epochs: int = 10
    lr: float = 1e-3
    clip_norm: float = 5.0
    # generation options
    negatives: bool = True
    # split ratios
    train_frac: float = 0.90
    val_frac: float = 0.05
    test_frac: float = 0.05
    # service options
    host: str = "127.0.0.1"
    port: int = 8080
    static_dir: str = ""

    def to_dict(self):
        return dataclasses.asdict(self)

    def ratios(self):
        return (self.train_frac, self.val_frac, self.test_frac)

    @classmethod
    def load(cls, path=None, env=None, overrides=None):
        """defaults < config file < CODEQA_* environment < explicit overrides."""
        values = {}
        if path:
            try:
                with open(path, "r", encoding="utf-8") as fh:
                    file_values = json.load(fh)
            except (OSError, json.JSONDecodeError) as exc:
                raise ConfigError("cannot read config %s: %s" % (path, exc)) from exc
            if not isinstance(file_values, dict):
                raise ConfigError("config file must hold a JSON object")
            values.update(file_values)
        env = os.environ if env is None else env
        for f in dataclasses.fields(cls):
            key = ENV_PREFIX + f.name.upper()
            if key in env:
                values[f.name] = env[key]
        if overrides:
            values.update({k: v for k, v in overrides.items() if v is not None})

        known = {f.name: f for f in dataclasses.fields(cls)}
        unknown = set(values) - set(known)
        if unknown:
            raise ConfigError("unknown config keys: %s" % ", ".join(sorted(unknown)))
        coerced = {}
        for name, raw in values.items():
            coerced[name] = _coerce(raw, known[name].type, name)
        return cls(**coerced)


def _coerce(value, ftype, name):
    if ftype == "bool" or ftype is bool:
        if isinstance(value, bool):
            return value
        text = str(value).strip().lower()
        if text in ("1", "true", "yes", "on"):
            return True
        if text in ("0", "false", "no", "off"):
            return False
        raise ConfigError("cannot parse boolean %s=%r" % (name, value))
    try:
        if ftype == "int" or ftype is int:
            return int(value)
        if ftype == "float" or ftype is float:
            return float(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError("cannot parse %s=%r" % (name, value)) from exc
    return str(value)
