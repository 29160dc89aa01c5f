"""Deciding normalization properties through the finite semantics.

The verdicts come from evaluating the term as it stands (fixed points by
least-fixed-point iteration) and applying the appropriate test element.
Reduction never participates in a verdict; it only extracts the witness
afterwards.

The witness extraction goes through truncation: each Y at recursion type
s is replaced by the finite unfolding of depth height(s), which bottoms
out in a constant instead of recursing further.  The truncation is deep
enough that the semantics cannot tell the two terms apart, so on a
positive verdict the truncation's normal form, which always exists, is a
normal form of the original.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .printer import term_to_str
from .reduction import assured_normalize
from .semantics import eval_term, head_test_t, height, test_t
from .terms import Term, contains_omega, type_of, y_truncate, y_types
from .types import SimpleType, type_to_str


@dataclass(frozen=True)
class AnalysisReport:
    """Outcome of one semantic decision.

    The verdict is the computed ground test value; truncation depths
    record the unfolding the certified normalizer would use for each
    recursion type in the term.
    """

    kind: str  # "nf", "hnf" or "properness"
    verdict: bool
    subject_type: SimpleType
    truncation_depths: dict[SimpleType, int] = field(default_factory=dict)
    elapsed_ms: float = 0.0

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "verdict": self.verdict,
            "test_value": "top" if self.verdict else "bot",
            "type": type_to_str(self.subject_type),
            "truncation_depths": {
                type_to_str(ty): d for ty, d in sorted(
                    self.truncation_depths.items(), key=lambda kv: type_to_str(kv[0])
                )
            },
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


class AnalysisInvariantError(Exception):
    """A verdict and the reduction evidence disagree.

    This is never expected; it means a bug in the truncation, the
    semantics or the normalizer, and the offending artifacts are
    attached for inspection.
    """

    def __init__(self, message: str, term: Term, truncated: Term, nf: Term | None,
                 report: AnalysisReport):
        super().__init__(message)
        self.term = term
        self.truncated = truncated
        self.nf = nf
        self.report = report


def truncation_depths(t: Term) -> dict[SimpleType, int]:
    """The unfolding depth used for each recursion type occurring in t."""
    return {ty: height(ty) for ty in y_types(t)}


def tilde_Y(t: Term) -> Term:
    """Replace every fixed-point constant by its height-deep unfolding."""
    return y_truncate(t, truncation_depths(t))


def _decide(t: Term, kind: str) -> AnalysisReport:
    start = time.perf_counter()
    ty = type_of(t, {})
    depths = truncation_depths(t)
    test = test_t(ty) if kind == "nf" else head_test_t(ty)
    flag = test.apply(eval_term(t)).flag
    elapsed = (time.perf_counter() - start) * 1000.0
    return AnalysisReport(kind=kind, verdict=flag, subject_type=ty,
                          truncation_depths=depths, elapsed_ms=elapsed)


def has_normal_form(t: Term) -> AnalysisReport:
    """Decide whether the closed term t reduces to a constant-free normal form."""
    return _decide(t, "nf")


def has_head_normal_form(t: Term) -> AnalysisReport:
    """Decide whether the closed term t reduces to a head normal form
    whose head is not a constant."""
    return _decide(t, "hnf")


def properness_report(t: Term) -> AnalysisReport:
    """For a term without fixed-point constants: decide whether its long
    normal form is proper, i.e. mentions no bottom constant."""
    report = _decide(t, "nf")
    return AnalysisReport(kind="properness", verdict=report.verdict,
                          subject_type=report.subject_type,
                          truncation_depths=report.truncation_depths,
                          elapsed_ms=report.elapsed_ms)


def certified_normalize(t: Term, report: AnalysisReport | None = None) -> Term | None:
    """Normal form of t, or None when the semantic test refutes one.

    On a positive verdict the truncation of t is normalized; the result
    must be free of bottom constants and is then a normal form of t
    itself.  A constant surviving in the output voids the certificate
    and raises AnalysisInvariantError rather than returning quietly.
    Pass a report from has_normal_form to skip re-deciding.
    """
    if report is None:
        report = has_normal_form(t)
    if not report.verdict:
        return None
    truncated = tilde_Y(t)
    nf = assured_normalize(truncated)
    if contains_omega(nf):
        raise AnalysisInvariantError(
            f"positive verdict but the normalized truncation kept a bottom "
            f"constant: {term_to_str(nf)}",
            term=t, truncated=truncated, nf=nf, report=report,
        )
    return nf


def proper_nf_equal(a: Term, b: Term) -> bool:
    """Whether two constant-free-normalizable terms share a normal form."""
    na, nb = certified_normalize(a), certified_normalize(b)
    if na is None or nb is None:
        return False
    return na == nb


__all__ = [
    "AnalysisInvariantError",
    "AnalysisReport",
    "certified_normalize",
    "has_head_normal_form",
    "has_normal_form",
    "proper_nf_equal",
    "properness_report",
    "tilde_Y",
    "truncation_depths",
]
