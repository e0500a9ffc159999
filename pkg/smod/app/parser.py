"""
Recursive-descent parser for polynomial expressions

Grammar (whitespace insignificant):
    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := power (('*'|'/') power)*
    power  := atom ('^' INT)?
    atom   := INT | NAME | '(' expr ')'

The parser is generic over the value type: callers supply the symbol table,
an integer constructor and a division rule. Division is the only operation
whose legality depends on the value domain (by nonzero constants only in
polynomial rings, by anything nonzero in fields).
"""

import re
from dataclasses import dataclass
from typing import Any, Callable, Dict, List

from .errors import ParseError, UnknownSymbol

_TOKEN_RE = re.compile(r'\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))')


@dataclass(frozen=True)
class Token:
    kind: str       # int | name | op | end
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if not match or match.end() == pos:
            break
        number, name, op = match.groups()
        start = match.start(match.lastindex)
        if number is not None:
            tokens.append(Token('int', number, start))
        elif name is not None:
            tokens.append(Token('name', name, start))
        else:
            tokens.append(Token('op', op, start))
        pos = match.end()
    tokens.append(Token('end', '', len(text)))
    return tokens


class ExpressionParser:
    """
    Parse one expression into a ring or field element

    Args:
        text: expression text
        symbols: name -> element
        number: int -> element
        divide: (numerator, denominator, position) -> element; raises ParseError
                when the division is not allowed
    """

    def __init__(
        self,
        text: str,
        symbols: Dict[str, Any],
        number: Callable[[int], Any],
        divide: Callable[[Any, Any, int], Any],
    ):
        self.text = text
        self.symbols = symbols
        self.number = number
        self.divide = divide
        self.tokens = tokenize(text)
        self.index = 0

    # Token stream

    def _peek(self) -> Token:
        return self.tokens[self.index]

    def _next(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _accept(self, op: str) -> bool:
        token = self._peek()
        if token.kind == 'op' and token.text == op:
            self.index += 1
            return True
        return False

    def _fail(self, expected: str):
        raise ParseError(self._peek().position, expected, self.text)

    # Grammar

    def parse(self) -> Any:
        if self._peek().kind == 'end':
            self._fail("expression")
        value = self._expr()
        if self._peek().kind != 'end':
            self._fail("operator or end of input")
        return value

    def _expr(self) -> Any:
        negate = False
        if self._accept('-'):
            negate = True
        else:
            self._accept('+')
        value = self._term()
        if negate:
            value = -value
        while True:
            if self._accept('+'):
                value = value + self._term()
            elif self._accept('-'):
                value = value - self._term()
            else:
                return value

    def _term(self) -> Any:
        value = self._power()
        while True:
            if self._accept('*'):
                value = value * self._power()
            elif self._peek().kind == 'op' and self._peek().text == '/':
                position = self._next().position
                value = self.divide(value, self._power(), position)
            else:
                return value

    def _power(self) -> Any:
        base = self._atom()
        if self._accept('^'):
            token = self._next()
            if token.kind != 'int':
                self.index -= 1
                self._fail("integer exponent")
            return base ** int(token.text)
        return base

    def _atom(self) -> Any:
        token = self._next()
        if token.kind == 'int':
            return self.number(int(token.text))
        if token.kind == 'name':
            if token.text not in self.symbols:
                raise UnknownSymbol(token.text)
            return self.symbols[token.text]
        if token.kind == 'op' and token.text == '(':
            value = self._expr()
            if not self._accept(')'):
                self._fail("')'")
            return value
        self.index -= 1
        self._fail("number, name or '('")
