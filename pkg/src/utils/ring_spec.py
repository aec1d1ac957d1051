"""
Ring expression mini-language

    ring := term {"x" term}
    term := atom ["/<" nat {"," nat} ">"]
    atom := "Z" nat | "Z" nat "[x]^" nat | "Z" nat "(+)" "Z" nat | "(" ring ")"

Whitespace between tokens is ignored. A chain "A x B x C" is one product
with three factors (same element encoding as the left-nested form);
parentheses create explicit nesting. Quotient generators are element
indices in the encoding of the ring being divided.
"""

from dataclasses import dataclass
from typing import List, Optional

from src.core.exceptions import InvalidDescriptor, ParseError
from src.models.descriptors import (
    Idealize,
    Product,
    Quotient,
    RingDescriptor,
    TruncPoly,
    Zn,
    validate_descriptor,
)

MAX_DIGITS = 9
MAX_NESTING = 64
_PUNCTUATION = "()[]^+/<>,"


@dataclass(frozen=True)
class Token:
    kind: str  # "Z", "x", "nat", one punctuation char, or "end"
    text: str
    offset: int  # byte offset into the UTF-8 input
    value: int = 0

    def describe(self) -> str:
        if self.kind == "end":
            return "end of input"
        return repr(self.text)


def _byte_offset(text: str, index: int) -> int:
    # input decoded with surrogateescape maps back to its original bytes
    prefix = text[:index]
    try:
        return len(prefix.encode("utf-8", errors="surrogateescape"))
    except UnicodeEncodeError:
        return len(prefix.encode("utf-8", errors="surrogatepass"))


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        offset = _byte_offset(text, i)
        if ch in "Zx" or ch in _PUNCTUATION:
            tokens.append(Token(ch, ch, offset))
            i += 1
        elif "0" <= ch <= "9":
            j = i
            while j < len(text) and "0" <= text[j] <= "9":
                j += 1
            digits = text[i:j]
            if len(digits) > MAX_DIGITS:
                raise ParseError(offset, f"a number of at most {MAX_DIGITS} digits", repr(digits))
            tokens.append(Token("nat", digits, offset, int(digits)))
            i = j
        else:
            raise ParseError(offset, "a ring expression token", repr(ch))
    tokens.append(Token("end", "", _byte_offset(text, len(text))))
    return tokens


class _Parser:
    """Recursive descent with one token of lookahead"""

    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.depth = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _advance(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind != "end":
            self.pos += 1
        return token

    def _expect(self, kind: str, expected: Optional[str] = None) -> Token:
        token = self.current
        if token.kind != kind:
            raise ParseError(token.offset, expected or repr(kind), token.describe())
        return self._advance()

    def parse(self) -> RingDescriptor:
        ring = self.ring()
        self._expect("end", "'x', '/<' or end of input")
        return ring

    def ring(self) -> RingDescriptor:
        terms = [self.term()]
        while self.current.kind == "x":
            self._advance()
            terms.append(self.term())
        if len(terms) == 1:
            return terms[0]
        return Product(factors=tuple(terms))

    def term(self) -> RingDescriptor:
        atom = self.atom()
        if self.current.kind != "/":
            return atom
        self._advance()
        self._expect("<", "'<' after '/'")
        generators = [self._expect("nat", "an element index").value]
        while self.current.kind == ",":
            self._advance()
            generators.append(self._expect("nat", "an element index").value)
        self._expect(">", "',' or '>'")
        return Quotient(base=atom, generators=tuple(generators))

    def atom(self) -> RingDescriptor:
        token = self.current
        if token.kind == "(":
            if self.depth >= MAX_NESTING:
                raise ParseError(token.offset, f"at most {MAX_NESTING} nested parentheses", token.describe())
            self._advance()
            self.depth += 1
            inner = self.ring()
            self._expect(")", "'x' or ')'")
            self.depth -= 1
            return inner
        self._expect("Z", "'Z' or '('")
        modulus = self._expect("nat", "a natural number")
        if modulus.value < 2:
            raise InvalidDescriptor(f"Z{modulus.value}: modulus must be at least 2", modulus.offset)

        if self.current.kind == "[":
            self._advance()
            self._expect("x", "'x' inside '[x]'")
            self._expect("]", "']'")
            self._expect("^", "'^'")
            degree = self._expect("nat", "a degree bound")
            if degree.value < 1:
                raise InvalidDescriptor(
                    f"Z{modulus.value}[x]^{degree.value}: degree bound must be at least 1", degree.offset
                )
            return TruncPoly(n=modulus.value, k=degree.value)

        if self.current.kind == "(":
            self._advance()
            self._expect("+", "'+' inside '(+)'")
            self._expect(")", "')'")
            self._expect("Z", "'Z'")
            module = self._expect("nat", "a natural number")
            if module.value < 1:
                raise InvalidDescriptor(f"Z{module.value}: module order must be positive", module.offset)
            if modulus.value % module.value != 0:
                raise InvalidDescriptor(
                    f"Z{modulus.value}(+)Z{module.value}: {module.value} does not divide {modulus.value}",
                    module.offset,
                )
            return Idealize(n=modulus.value, m=module.value)

        return Zn(n=modulus.value)


def parse(text: str) -> RingDescriptor:
    """
    Parse a ring expression into a descriptor

    Raises:
        ParseError: If the text does not match the grammar
        InvalidDescriptor: If it matches but names an invalid construction
    """
    descriptor = _Parser(text).parse()
    validate_descriptor(descriptor)
    return descriptor


def render(d: RingDescriptor) -> str:
    """Inverse of parse: parse(render(d)) == d"""
    if isinstance(d, Zn):
        return f"Z{d.n}"
    if isinstance(d, TruncPoly):
        return f"Z{d.n}[x]^{d.k}"
    if isinstance(d, Idealize):
        return f"Z{d.n}(+)Z{d.m}"
    if isinstance(d, Product):
        return " x ".join(f"({render(f)})" if isinstance(f, Product) else render(f) for f in d.factors)
    if isinstance(d, Quotient):
        base = render(d.base)
        if isinstance(d.base, (Product, Quotient)):
            base = f"({base})"
        return f"{base}/<{','.join(str(g) for g in d.generators)}>"
    raise InvalidDescriptor(f"cannot render {d!r}")
