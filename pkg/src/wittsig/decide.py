"""Deciding whether a rational Witt class over Q(zeta_m)(t) vanishes.

A class is trivial exactly when its signature step function is identically
zero under every embedding in G0(m). Witnesses are arc samples (roots of
unity); every transcendental point of the same open arc carries the same
value, so each witness stands for a whole arc of transcendental witnesses.
"""

from dataclasses import dataclass, field

from .errors import WittsigError
from .field import DEFAULT_MAX_REFINE, embeddings_G0
from .sigfunc import signature_step_function

__all__ = ["Decision", "Witness", "is_trivial", "decide_batch"]


@dataclass(frozen=True)
class Witness:
    embedding: object
    sample: object
    value: object

    def to_json(self):
        return {"embedding_k": self.embedding.exponent,
                "sample": {"N": self.sample.N, "j": self.sample.j},
                "value": str(self.value)}


@dataclass
class Decision:
    trivial: bool
    witnesses: list = field(default_factory=list)
    step_functions: dict = field(default_factory=dict)
    error: Exception = None

    def __bool__(self):
        return self.trivial

    def to_json(self, include_step_functions=True):
        out = {"trivial": self.trivial, "witnesses": [w.to_json() for w in self.witnesses]}
        if include_step_functions:
            out["step_functions"] = {str(rho.exponent): s.to_json() for rho, s in self.step_functions.items()}
        if self.error is not None:
            out["error"] = f"{type(self.error).__name__}: {self.error}"
        return out


def is_trivial(w, precision=None, max_refine=DEFAULT_MAX_REFINE):
    """Decision for the class w: trivial iff every arc value under every
    embedding of G0(m) is zero. Nontrivial decisions list one witness per
    nonzero arc."""
    steps = {}
    witnesses = []
    for rho in embeddings_G0(w.m):
        s = signature_step_function(w, rho, precision=precision, max_refine=max_refine)
        steps[rho] = s
        for sample, v in zip(s.samples, s.arc_values):
            if v != 0:
                witnesses.append(Witness(rho, sample, v))
    return Decision(not witnesses, witnesses, steps)


def decide_batch(ws, precision=None, max_refine=DEFAULT_MAX_REFINE):
    """is_trivial for each element in order. Errors are collected per element
    (``Decision.error`` set, ``trivial`` False) instead of aborting the batch."""
    out = []
    for w in ws:
        try:
            out.append(is_trivial(w, precision, max_refine))
        except WittsigError as exc:
            out.append(Decision(False, error=exc))
    return out
