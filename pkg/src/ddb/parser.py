"""Text format for presentations.

Grammar (whitespace is insignificant between tokens)::

    presentation := "<" [ident ("," ident)*] "|" [relator ("," relator)*] ">"
    relator      := word ("=" word)*
    word         := "1" | factor (["*"] factor)*
    factor       := (ident | "(" word ")" | "[" word "," word "]") ["^" int]
    int          := ["-" | "+"] digits

An equation chain ``r = s = t`` becomes the relators ``r s^-1`` and
``s t^-1``.  ``[u, v]`` is the commutator ``u v u^-1 v^-1``.  The Unicode
angle brackets ``⟨ ⟩`` are accepted in place of ``< >``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PresentationSyntaxError
from .words import Presentation, Word

_PUNCT = {"<": "<", ">": ">", "⟨": "<", "⟩": ">", "|": "|", ",": ",", "=": "=",
          "^": "^", "(": "(", ")": ")", "[": "[", "]": "]", "*": "*"}


@dataclass
class _Token:
    kind: str  # "ident", "int", "one", "end" or a punctuation character
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch in _PUNCT:
            tokens.append(_Token(_PUNCT[ch], ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isascii() and ch.isalpha():
            j = i + 1
            while j < n and text[j].isascii() and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in "+-" or ch.isdigit():
            j = i + 1 if ch in "+-" else i
            k = j
            while k < n and text[k].isascii() and text[k].isdigit():
                k += 1
            if k == j:
                raise PresentationSyntaxError(f"expected digits after {ch!r}", line, col)
            tokens.append(_Token("int", text[i:k], line, col))
            col += k - i
            i = k
            continue
        raise PresentationSyntaxError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("end", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0
        self.names: dict[str, int] = {}

    @property
    def tok(self) -> _Token:
        return self.toks[self.pos]

    def fail(self, message: str, tok: _Token | None = None):
        tok = tok or self.tok
        raise PresentationSyntaxError(message, tok.line, tok.col)

    def expect(self, kind: str) -> _Token:
        tok = self.tok
        if tok.kind != kind:
            found = tok.text or "end of input"
            self.fail(f"expected {kind!r}, found {found!r}")
        self.pos += 1
        return tok

    def presentation(self) -> Presentation:
        self.expect("<")
        gens: list[str] = []
        if self.tok.kind != "|":
            while True:
                tok = self.expect("ident")
                if tok.text in self.names:
                    self.fail(f"duplicate generator {tok.text!r}", tok)
                self.names[tok.text] = len(gens)
                gens.append(tok.text)
                if self.tok.kind != ",":
                    break
                self.pos += 1
        self.expect("|")
        rels: list[Word] = []
        if self.tok.kind != ">":
            while True:
                rels.extend(self.relator())
                if self.tok.kind != ",":
                    break
                self.pos += 1
        self.expect(">")
        self.expect("end")
        return Presentation(tuple(gens), tuple(rels))

    def relator(self) -> list[Word]:
        sides = [self.word()]
        while self.tok.kind == "=":
            self.pos += 1
            sides.append(self.word())
        if len(sides) == 1:
            return sides
        return [lhs * rhs.inverse() for lhs, rhs in zip(sides, sides[1:])]

    def word(self) -> Word:
        if self.tok.kind == "int" and self.tok.text == "1":
            self.pos += 1
            return Word()
        w = self.factor()
        while self.tok.kind in ("ident", "(", "[", "*"):
            if self.tok.kind == "*":
                self.pos += 1
            w = w * self.factor()
        return w

    def factor(self) -> Word:
        tok = self.tok
        if tok.kind == "ident":
            self.pos += 1
            if tok.text not in self.names:
                self.fail(f"undeclared generator {tok.text!r}", tok)
            base = Word.gen(self.names[tok.text])
        elif tok.kind == "(":
            self.pos += 1
            base = self.word()
            self.expect(")")
        elif tok.kind == "[":
            self.pos += 1
            u = self.word()
            self.expect(",")
            v = self.word()
            self.expect("]")
            base = u * v * u.inverse() * v.inverse()
        else:
            self.fail(f"expected a generator, '(' or '[', found {tok.text or 'end of input'!r}")
        if self.tok.kind == "^":
            self.pos += 1
            exp = int(self.expect("int").text)
            base = base ** exp
        return base


def parse_presentation(text: str) -> Presentation:
    """Parse the text form of a presentation.

    >>> print(parse_presentation("< a | a^2 = a^5 >"))
    < a | a^-3 >
    """
    return _Parser(text).presentation()


def format_presentation(p: Presentation) -> str:
    return p.format()
