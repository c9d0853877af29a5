"""Text formats: presentation files and generator words.

Presentation files are line oriented, ``#`` starts a comment::

    algebra "quantum plane"
    generators 2
    parameters q
    orientation descending
    q 1 2 = q

Entries ``q I J``, ``a I J K`` and ``b I J`` take expressions in the scalar
grammar.  Ascending files are translated to descending form on load.
"""

from __future__ import annotations

import re
from typing import Dict, List, Optional, Tuple

from .freealg import FreePoly
from .presentation import (
    ASCENDING,
    DESCENDING,
    AlgebraPresentation,
    translate_orientation,
    validate,
)
from .scalar import IDENTIFIER, ONE, Scalar, ScalarSyntaxError, parse_scalar

__all__ = [
    "ParseError",
    "ValidationError",
    "parse_presentation_file",
    "load_presentation",
    "dump_presentation",
    "parse_word",
]


class ParseError(ValueError):
    def __init__(self, line: Optional[int], message: str):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line is not None else message)


class ValidationError(ValueError):
    def __init__(self, violations: List[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


_HEADER_KEYS = ("algebra", "generators", "parameters", "orientation")
_ENTRY = re.compile(r"(?P<kind>[qab])\s+(?P<idx>[^=]*?)\s*=\s*(?P<expr>.*)\Z")


def _strip_comment(line: str) -> str:
    # '#' inside the quoted algebra name is kept
    out, quoted = [], False
    for ch in line:
        if ch == '"':
            quoted = not quoted
        elif ch == "#" and not quoted:
            break
        out.append(ch)
    return "".join(out).strip()


def parse_presentation_file(text: str, *, translate: bool = True) -> AlgebraPresentation:
    """Parse and validate a presentation file.

    Raises :class:`ParseError` (with a 1-based line number) for syntax
    problems and :class:`ValidationError` for semantic ones such as a zero
    commutation constant.
    """
    header: Dict[str, Tuple[int, str]] = {}
    entries: List[Tuple[int, str, str, str]] = []
    seen_keys: Dict[tuple, int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        word = line.split(None, 1)[0]
        if word in _HEADER_KEYS:
            if word in header:
                raise ParseError(lineno, f"duplicate '{word}' line (first on line {header[word][0]})")
            rest = line[len(word):].strip()
            header[word] = (lineno, rest)
            continue
        m = _ENTRY.match(line)
        if word in ("q", "a", "b"):
            if m is None:
                raise ParseError(lineno, f"malformed '{word}' entry, expected '{word} <indices> = <expr>'")
            entries.append((lineno, m.group("kind"), m.group("idx"), m.group("expr")))
            continue
        raise ParseError(lineno, f"unknown key {word!r}")

    if "generators" not in header:
        raise ParseError(max(1, len(text.splitlines())), "end of file without a 'generators' line")
    gl, gtext = header["generators"]
    if not re.fullmatch(r"\d+", gtext):
        raise ParseError(gl, f"generator count must be a positive integer, got {gtext!r}")
    n = int(gtext)
    if n < 1:
        raise ParseError(gl, "generator count must be at least 1")

    name = None
    if "algebra" in header:
        al, atext = header["algebra"]
        m = re.fullmatch(r'"([^"]*)"', atext)
        if m is None:
            raise ParseError(al, 'algebra name must be a double-quoted string')
        name = m.group(1)

    params: Tuple[str, ...] = ()
    if "parameters" in header:
        pl, ptext = header["parameters"]
        names = [p.strip() for p in ptext.split(",")] if ptext else []
        for p in names:
            if not IDENTIFIER.match(p):
                raise ParseError(pl, f"invalid parameter name {p!r}")
        if len(set(names)) != len(names):
            raise ParseError(pl, "duplicate parameter name")
        params = tuple(names)

    orientation = DESCENDING
    if "orientation" in header:
        ol, otext = header["orientation"]
        if otext not in (DESCENDING, ASCENDING):
            raise ParseError(ol, f"orientation must be 'descending' or 'ascending', got {otext!r}")
        orientation = otext

    q: Dict[tuple, Scalar] = {}
    a: Dict[tuple, Scalar] = {}
    b: Dict[tuple, Scalar] = {}
    arity = {"q": 2, "a": 3, "b": 2}
    for lineno, kind, idx_text, expr in entries:
        parts = idx_text.split()
        if len(parts) != arity[kind] or not all(re.fullmatch(r"\d+", p) for p in parts):
            raise ParseError(lineno, f"'{kind}' needs {arity[kind]} integer indices, got {idx_text!r}")
        idx = tuple(int(p) for p in parts)
        i, j = idx[0], idx[1]
        if not (1 <= i < j <= n):
            raise ParseError(lineno, f"indices {i} {j} out of range: need 1 <= i < j <= {n}")
        if kind == "a" and not (1 <= idx[2] <= n):
            raise ParseError(lineno, f"index k = {idx[2]} out of range: need 1 <= k <= {n}")
        key = (kind,) + idx
        if key in seen_keys:
            raise ParseError(lineno, f"duplicate entry '{kind} {idx_text}' (first on line {seen_keys[key]})")
        seen_keys[key] = lineno
        if not expr.strip():
            raise ParseError(lineno, "missing expression after '='")
        try:
            value = parse_scalar(expr, params)
        except ScalarSyntaxError as exc:
            raise ParseError(lineno, str(exc)) from None
        except ZeroDivisionError:
            raise ParseError(lineno, "division by zero in expression") from None
        {"q": q, "a": a, "b": b}[kind][idx] = value

    pres = AlgebraPresentation(n, q, a, b, params, orientation, name)
    problems = validate(pres)
    if problems:
        raise ValidationError(problems)
    if translate and orientation == ASCENDING:
        pres = translate_orientation(pres)
    return pres


def load_presentation(path, **kw) -> AlgebraPresentation:
    with open(path, encoding="utf-8") as fh:
        return parse_presentation_file(fh.read(), **kw)


def dump_presentation(pres: AlgebraPresentation) -> str:
    """Render ``pres`` in the file format; parsing the result round-trips."""
    lines = []
    if pres.name is not None:
        lines.append(f'algebra "{pres.name}"')
    lines.append(f"generators {pres.n}")
    if pres.params:
        lines.append("parameters " + ", ".join(pres.params))
    lines.append(f"orientation {pres.orientation}")
    n = pres.n
    for i, j in pres.pairs():
        qv = pres.get_q(i, j)
        if qv != ONE:
            lines.append(f"q {i} {j} = {qv.render()}")
        for k in range(1, n + 1):
            av = pres.get_a(i, j, k)
            if not av.is_zero():
                lines.append(f"a {i} {j} {k} = {av.render()}")
        bv = pres.get_b(i, j)
        if not bv.is_zero():
            lines.append(f"b {i} {j} = {bv.render()}")
    return "\n".join(lines) + "\n"


_WORD_TOKEN = re.compile(r"x(\d+)(?:\^(\d+))?\Z")


def parse_word(text: str, n: int) -> FreePoly:
    """Parse ``"x2^2 x1"`` into the single word (2, 2, 1) with coefficient 1."""
    letters: List[int] = []
    tokens = text.split()
    if not tokens:
        raise ParseError(None, "empty word")
    for tok in tokens:
        m = _WORD_TOKEN.match(tok)
        if m is None:
            raise ParseError(None, f"malformed token {tok!r}; expected x<i> or x<i>^<k>")
        i = int(m.group(1))
        if not (1 <= i <= n):
            raise ParseError(None, f"generator x{i} out of range 1..{n}")
        k = int(m.group(2)) if m.group(2) is not None else 1
        letters.extend([i] * k)
    return FreePoly.word(letters)
