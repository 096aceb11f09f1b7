"""Text and JSON front ends: polynomial grammar, arc files, presentation files.

Grammar (whitespace insensitive, juxtaposition multiplies):

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*'? factor)*
    factor := base ('^' uint)?
    base   := rational | ident | '(' expr ')'
    rational := uint ('/' uint)?
    ident  := x | z | t | x1..x9 | z1..z9

Errors carry 1-based line/column positions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .arcs import Arc
from .errors import ParseError, ValidationError
from .poly import MultiPoly, canonical_var_key
from .presentation import LocalPresentation, tschirnhausen_normalize
from .series import PowerSeries

IDENTIFIERS = (
    {"x", "z", "t"}
    | {f"x{i}" for i in range(1, 10)}
    | {f"z{i}" for i in range(1, 10)}
)

_OPS = {"+": "PLUS", "-": "MINUS", "−": "MINUS", "*": "STAR",
        "^": "CARET", "/": "SLASH", "(": "LPAREN", ")": "RPAREN"}


class _Token:
    __slots__ = ("kind", "text", "column")

    def __init__(self, kind: str, text: str, column: int):
        self.kind = kind
        self.text = text
        self.column = column


def _tokenize(text: str) -> List[_Token]:
    tokens: List[_Token] = []
    i = 0
    while i < len(text):
        ch = text[i]
        col = i + 1
        if ch.isspace():
            i += 1
            continue
        if ch in _OPS:
            tokens.append(_Token(_OPS[ch], ch, col))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(_Token("NUM", text[i:j], col))
            i = j
            continue
        if ch.isalpha():
            j = i + 1
            if j < len(text) and text[j].isdigit():
                j += 1
            name = text[i:j]
            if name not in IDENTIFIERS:
                raise ParseError(f"unknown identifier {name!r}", column=col)
            tokens.append(_Token("IDENT", name, col))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", column=col)
    tokens.append(_Token("EOF", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: List[_Token], variables: Tuple[str, ...]):
        self.tokens = tokens
        self.pos = 0
        self.vars = variables

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self, kind: str) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != kind:
            raise ParseError(
                f"expected {kind}, found {tok.text or 'end of input'!r}",
                column=tok.column,
            )
        self.pos += 1
        return tok

    def parse_expr(self) -> MultiPoly:
        sign = 1
        if self.peek().kind in ("PLUS", "MINUS"):
            sign = -1 if self.take(self.peek().kind).kind == "MINUS" else 1
        result = self.parse_term()
        if sign < 0:
            result = -result
        while self.peek().kind in ("PLUS", "MINUS"):
            op = self.take(self.peek().kind)
            term = self.parse_term()
            result = result + term if op.kind == "PLUS" else result - term
        return result

    def parse_term(self) -> MultiPoly:
        result = self.parse_factor()
        while True:
            tok = self.peek()
            if tok.kind == "STAR":
                self.take("STAR")
                result = result * self.parse_factor()
            elif tok.kind in ("NUM", "IDENT", "LPAREN"):
                result = result * self.parse_factor()
            else:
                return result

    def parse_factor(self) -> MultiPoly:
        base = self.parse_base()
        if self.peek().kind == "CARET":
            self.take("CARET")
            exp = self.take("NUM")
            return base ** int(exp.text)
        return base

    def parse_base(self) -> MultiPoly:
        tok = self.peek()
        if tok.kind == "NUM":
            num = int(self.take("NUM").text)
            if self.peek().kind == "SLASH":
                self.take("SLASH")
                den = self.take("NUM")
                if int(den.text) == 0:
                    raise ParseError("division by zero", column=den.column)
                return MultiPoly.constant(self.vars, Fraction(num, int(den.text)))
            return MultiPoly.constant(self.vars, num)
        if tok.kind == "IDENT":
            self.take("IDENT")
            return MultiPoly.variable(self.vars, tok.text)
        if tok.kind == "LPAREN":
            self.take("LPAREN")
            inner = self.parse_expr()
            self.take("RPAREN")
            return inner
        raise ParseError(
            f"expected a number, variable or '(', found {tok.text or 'end of input'!r}",
            column=tok.column,
        )


def parse_poly(text: str, variables: Optional[Sequence[str]] = None) -> MultiPoly:
    """Parse polynomial text into a canonical MultiPoly.

    Without an explicit variable list the polynomial lives over exactly the
    identifiers that occur, in canonical order (x's, z's, then t).
    """
    tokens = _tokenize(text)
    occurring = sorted(
        {tok.text for tok in tokens if tok.kind == "IDENT"}, key=canonical_var_key
    )
    if variables is None:
        variables = occurring
    else:
        extra = [v for v in occurring if v not in variables]
        if extra:
            raise ParseError(f"unexpected variables {extra} (allowed: {list(variables)})")
    parser = _Parser(tokens, tuple(variables))
    result = parser.parse_expr()
    tok = parser.peek()
    if tok.kind != "EOF":
        raise ParseError(f"trailing input {tok.text!r}", column=tok.column)
    return result


def poly_text(f: MultiPoly) -> str:
    """Canonical printable form, re-parsable by parse_poly."""
    return str(f)


def series_text(s: PowerSeries) -> str:
    """Grammar-compatible polynomial-in-t text for the stored coefficients."""
    if not s.coeffs:
        return "0"
    parts = []
    for k, c in enumerate(s.coeffs):
        if c == 0:
            continue
        if k == 0:
            body = str(abs(c))
        else:
            tpow = "t" if k == 1 else f"t^{k}"
            body = tpow if abs(c) == 1 else f"{abs(c)}*{tpow}"
        parts.append(("-" if c < 0 else "+", body))
    sign0, body0 = parts[0]
    text = ("-" if sign0 == "-" else "") + body0
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def parse_arc(document: dict) -> Arc:
    """Arc file: {"precision": N | "exact", "coords": {var: poly-in-t text}}."""
    if not isinstance(document, dict) or "coords" not in document:
        raise ValidationError('arc document needs "precision" and "coords"')
    precision = document.get("precision", "exact")
    if precision == "exact":
        prec = None
    elif isinstance(precision, int) and precision >= 1:
        prec = precision
    else:
        raise ValidationError(f'precision must be a positive integer or "exact", got {precision!r}')
    coords: Dict[str, PowerSeries] = {}
    for name, text in document["coords"].items():
        if name not in IDENTIFIERS or name == "t":
            raise ValidationError(f"bad coordinate name {name!r}")
        f = parse_poly(str(text))
        bad = [v for v in f.vars if v != "t"]
        if bad:
            raise ValidationError(f"non-t variables in coordinate {name!r}: {bad}")
        g = f if "t" in f.vars else f.extend_vars(("t",))
        degree = g.degree_in("t")
        coeffs = [Fraction(0)] * (degree + 1)
        for exp, coeff in g.terms.items():
            coeffs[exp[0]] = coeff
        coords[name] = PowerSeries(coeffs, prec)
    return Arc(coords)


def arc_to_document(a: Arc) -> dict:
    precision = a.precision
    return {
        "precision": "exact" if precision is None else precision,
        "coords": {v: series_text(s) for v, s in sorted(a.coords.items())},
    }


def load_presentation(document: dict) -> LocalPresentation:
    """Presentation file: {"d": N, "hypersurfaces": [{"var", "b", "f"}]}.

    Equations may carry an x^(b-1) term; they are brought to Tschirnhausen
    form here.  The base variables are everything the equations mention
    besides the distinguished variables, and must number exactly d.
    """
    if not isinstance(document, dict) or "d" not in document or "hypersurfaces" not in document:
        raise ValidationError('presentation document needs "d" and "hypersurfaces"')
    d = document["d"]
    if not isinstance(d, int) or d < 1:
        raise ValidationError(f"base dimension must be a positive integer, got {d!r}")
    entries = document["hypersurfaces"]
    if not entries:
        raise ValidationError("presentation needs at least one hypersurface")
    parsed = []
    declared = []
    for entry in entries:
        var = entry.get("var")
        if var not in IDENTIFIERS or var == "t":
            raise ValidationError(f"bad distinguished variable {var!r}")
        declared.append(var)
        parsed.append((var, int(entry["b"]), parse_poly(str(entry["f"]))))
    if len(set(declared)) != len(declared):
        raise ValidationError(f"distinguished variables repeat: {declared}")
    base = set()
    for var, _, f in parsed:
        for v in f.vars:
            if v == "t":
                raise ValidationError("t cannot appear in a presentation equation")
            if v not in declared:
                base.add(v)
    base_vars = tuple(sorted(base, key=canonical_var_key))
    if len(base_vars) != d:
        raise ValidationError(
            f"equations mention base variables {base_vars}, but d = {d}"
        )
    hypersurfaces = []
    for var, b, f in parsed:
        foreign = [v for v in f.vars if v != var and v not in base_vars]
        if foreign:
            raise ValidationError(
                f"equation for {var!r} involves other distinguished variables {foreign}"
            )
        if var not in f.vars or f.degree_in(var) != b:
            raise ValidationError(
                f"equation for {var!r} must have the declared degree {b}"
            )
        ambient = (var,) + base_vars
        h = tschirnhausen_normalize(f.extend_vars(ambient), var)
        hypersurfaces.append(h)
    return LocalPresentation(d, tuple(hypersurfaces))


def presentation_to_document(p: LocalPresentation) -> dict:
    return {
        "d": p.d,
        "hypersurfaces": [
            {"var": h.var, "b": h.b, "f": poly_text(h.polynomial())}
            for h in p.hypersurfaces
        ],
    }


def fraction_text(value) -> str:
    """Exact fraction string for reports."""
    return str(Fraction(value))
