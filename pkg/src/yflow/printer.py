"""Pretty printer for terms; inverse of the parser up to alpha equivalence.

Abstraction bodies extend right, application is left associative, and
parentheses are minimal.  Subterms that are literally Church numerals
print as #m{t} unless sugar is disabled.
"""

from __future__ import annotations

from .terms import App, Lam, OmegaConst, Term, Var, YConst, match_numeral
from .types import type_to_str

_LAM, _APP, _ATOM = 0, 1, 2


def term_to_str(t: Term, sugar: bool = True) -> str:
    return _render(t, _LAM, sugar)


def _render(t: Term, level: int, sugar: bool) -> str:
    if sugar:
        hit = match_numeral(t)
        if hit is not None:
            m, alpha = hit
            return f"#{m}{{{type_to_str(alpha)}}}"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, OmegaConst):
        return f"Omega{{{type_to_str(t.ty)}}}"
    if isinstance(t, YConst):
        return f"Y{{{type_to_str(t.ty)}}}"
    if isinstance(t, Lam):
        body = _render(t.body, _LAM, sugar)
        text = f"\\{t.var}:{type_to_str(t.var_ty)}. {body}"
        return text if level <= _LAM else f"({text})"
    if isinstance(t, App):
        fun = _render(t.fun, _APP, sugar)
        arg = _render(t.arg, _ATOM, sugar)
        text = f"{fun} {arg}"
        return text if level <= _APP else f"({text})"
    raise TypeError(f"not a term: {t!r}")


__all__ = ["term_to_str"]
