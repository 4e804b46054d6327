"""codeqa: neural question answering about Java methods.

Pipeline: lex/extract features from raw methods (javatok), synthesize
question/answer/context tuples through paraphrase templates (qagen), train
a from-scratch 3-input attentional encoder-decoder by teacher forcing
(seqmodel), score it against extraction oracles (evalkit), and serve it
interactively (service). SubroutineQA is the sklearn-style front door.
"""

from .estimator import SubroutineQA

__version__ = "0.1.0"

__all__ = ["SubroutineQA", "__version__"]
