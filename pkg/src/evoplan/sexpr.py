"""Minimal s-expression reader/writer for the instance file format.

Atoms are ints (all-digit tokens, optional sign) or symbols; ``;`` starts a
comment running to end of line. Parse errors carry line:column positions.
"""

from __future__ import annotations

import re
from typing import Union

from .errors import EvoplanError

SexprAtom = Union[str, int]
Sexpr = Union[SexprAtom, list]

_INT = re.compile(r"[+-]?\d+$")
_DELIMS = "();"


class ParseError(EvoplanError):
    def __init__(self, message: str, line: int, col: int) -> None:
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


def _tokenize(text: str):
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
        elif c.isspace():
            col += 1
            i += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c in "()":
            yield c, c, line, col
            col += 1
            i += 1
        else:
            start = i
            start_col = col
            while i < n and not text[i].isspace() and text[i] not in _DELIMS:
                i += 1
                col += 1
            tok = text[start:i]
            if _INT.match(tok):
                yield "atom", int(tok), line, start_col
            else:
                yield "atom", tok, line, start_col


def parse_sexprs(text: str) -> list[Sexpr]:
    """All top-level forms in the document."""
    forms: list[Sexpr] = []
    stack: list[list] = []
    last_line, last_col = 1, 1
    for kind, value, line, col in _tokenize(text):
        last_line, last_col = line, col
        if kind == "(":
            stack.append([])
        elif kind == ")":
            if not stack:
                raise ParseError("unexpected ')'", line, col)
            done = stack.pop()
            if stack:
                stack[-1].append(done)
            else:
                forms.append(done)
        else:
            if stack:
                stack[-1].append(value)
            else:
                forms.append(value)
    if stack:
        raise ParseError("unbalanced parenthesis: unclosed '('", last_line, last_col)
    return forms


def format_sexpr(form: Sexpr) -> str:
    if isinstance(form, list):
        return f"({' '.join(format_sexpr(f) for f in form)})"
    return str(form)
