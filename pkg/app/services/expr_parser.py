# app/services/expr_parser.py

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, List, Optional, Tuple, Union

from pygments.token import Error, Name, Number, Operator, Punctuation

from app.services.algebra import AlgebraElement, multiply, power
from app.services.errors import ExprSyntaxError, NonIntegerExponent, QInNumericMode
from app.services.poly import UniPoly
from app.services.scalars import QParam
from app.utils.lexer import tokenize

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GenA:
    pass


@dataclass(frozen=True)
class GenB:
    pass


@dataclass(frozen=True)
class QSym:
    pass


@dataclass(frozen=True)
class Var:
    """The variable T of univariate polynomial input."""


@dataclass(frozen=True)
class RationalLit:
    value: Fraction


@dataclass(frozen=True)
class Add:
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class Sub:
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class Mul:
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class Pow:
    base: "ExprAst"
    exponent: int


@dataclass(frozen=True)
class Neg:
    operand: "ExprAst"


@dataclass(frozen=True)
class Paren:
    inner: "ExprAst"


ExprAst = Union[GenA, GenB, QSym, Var, RationalLit, Add, Sub, Mul, Pow, Neg, Paren]

ELEMENT_NAMES = frozenset({"A", "B"})
POLY_NAMES = frozenset({"T"})


class ExprParser:
    """Recursive-descent parser for the element DSL.

    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' uint)?
    base   := name | 'q' | rational | '(' expr ')' | '-' factor
    """

    def __init__(self, src: str, allow_q: bool = True, names: FrozenSet[str] = ELEMENT_NAMES):
        """Initialize the parser.

        Args:
            src: Expression text
            allow_q: Whether the symbol q is accepted
            names: Generator names accepted in this context
        """
        self.src = src
        self.allow_q = allow_q
        self.names = names
        self.tokens: List[Tuple[int, object, str]] = list(tokenize(src))
        self.pos = 0

    def _peek(self) -> Optional[Tuple[int, object, str]]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _advance(self) -> Tuple[int, object, str]:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def _accept(self, text: str) -> bool:
        token = self._peek()
        if token is not None and token[2] == text and token[1] in (Operator, Punctuation):
            self.pos += 1
            return True
        return False

    def parse(self) -> ExprAst:
        if not self.tokens:
            raise ExprSyntaxError("empty expression", 0)
        ast = self._expr()
        token = self._peek()
        if token is not None:
            raise ExprSyntaxError(f"unexpected {token[2]!r}", token[0])
        return ast

    def _expr(self) -> ExprAst:
        node = self._term()
        while True:
            if self._accept("+"):
                node = Add(node, self._term())
            elif self._accept("-"):
                node = Sub(node, self._term())
            else:
                return node

    def _term(self) -> ExprAst:
        node = self._factor()
        while self._accept("*"):
            node = Mul(node, self._factor())
        token = self._peek()
        if token is not None and (token[1] in Name or token[1] is Number or token[2] == "("):
            raise ExprSyntaxError("missing '*' between factors", token[0])
        return node

    def _factor(self) -> ExprAst:
        node = self._base()
        if self._accept("^"):
            token = self._peek()
            if token is None:
                raise NonIntegerExponent("'^' needs an exponent", len(self.src))
            position, kind, text = token
            if kind is not Number or "/" in text:
                raise NonIntegerExponent(f"exponent {text!r} is not a nonnegative integer", position)
            self._advance()
            node = Pow(node, int(text))
            if self._peek() is not None and self._peek()[2] == "^":
                raise ExprSyntaxError("chained '^' needs parentheses", self._peek()[0])
        return node

    def _base(self) -> ExprAst:
        token = self._peek()
        if token is None:
            raise ExprSyntaxError("unexpected end of expression", len(self.src))
        position, kind, text = token
        if self._accept("-"):
            return Neg(self._factor())
        if self._accept("("):
            inner = self._expr()
            if not self._accept(")"):
                raise ExprSyntaxError("expected ')'", self._peek()[0] if self._peek() else len(self.src))
            return Paren(inner)
        self._advance()
        if kind is Number:
            return RationalLit(Fraction(text))
        if kind is Name.Constant:
            if not self.allow_q:
                raise QInNumericMode("'q' is not allowed with a numeric q and substitution off", position)
            return QSym()
        if kind in Name and text in self.names:
            return {"A": GenA(), "B": GenB(), "T": Var()}[text]
        if kind is Error:
            raise ExprSyntaxError(f"unexpected character {text!r}", position)
        raise ExprSyntaxError(f"unexpected {text!r}", position)


def parse_expr(src: str, q: Optional[QParam] = None, substitute_q: bool = True) -> ExprAst:
    """Parse an element expression.

    Args:
        src: Expression text
        q: Parameter the expression will be evaluated over; with a numeric q
            and substitute_q False, the symbol q is rejected
        substitute_q: Replace q by its numeric value in numeric mode

    Returns:
        The expression tree
    """
    allow_q = q is None or q.is_symbolic or substitute_q
    return ExprParser(src, allow_q=allow_q).parse()


def parse_poly_expr(src: str, q: Optional[QParam] = None, substitute_q: bool = True) -> ExprAst:
    """Parse a univariate polynomial in T."""
    allow_q = q is None or q.is_symbolic or substitute_q
    return ExprParser(src, allow_q=allow_q, names=POLY_NAMES).parse()


def eval_expr(ast: ExprAst, q: QParam) -> AlgebraElement:
    """Evaluate an element expression to its normal form."""
    if isinstance(ast, GenA):
        return AlgebraElement.gen_a(q)
    if isinstance(ast, GenB):
        return AlgebraElement.gen_b(q)
    if isinstance(ast, QSym):
        return AlgebraElement.constant(q, q.gen())
    if isinstance(ast, RationalLit):
        return AlgebraElement.constant(q, ast.value)
    if isinstance(ast, Add):
        return eval_expr(ast.left, q) + eval_expr(ast.right, q)
    if isinstance(ast, Sub):
        return eval_expr(ast.left, q) - eval_expr(ast.right, q)
    if isinstance(ast, Mul):
        return multiply(eval_expr(ast.left, q), eval_expr(ast.right, q))
    if isinstance(ast, Pow):
        return power(eval_expr(ast.base, q), ast.exponent)
    if isinstance(ast, Neg):
        return -eval_expr(ast.operand, q)
    if isinstance(ast, Paren):
        return eval_expr(ast.inner, q)
    raise ExprSyntaxError(f"{type(ast).__name__} cannot appear in an element expression")


def eval_univariate(ast: ExprAst, q: QParam) -> UniPoly:
    """Evaluate a polynomial expression in T."""
    if isinstance(ast, Var):
        return UniPoly.variable(q)
    if isinstance(ast, QSym):
        return UniPoly.constant(q, q.gen())
    if isinstance(ast, RationalLit):
        return UniPoly.constant(q, ast.value)
    if isinstance(ast, Add):
        return eval_univariate(ast.left, q) + eval_univariate(ast.right, q)
    if isinstance(ast, Sub):
        return eval_univariate(ast.left, q) - eval_univariate(ast.right, q)
    if isinstance(ast, Mul):
        return eval_univariate(ast.left, q) * eval_univariate(ast.right, q)
    if isinstance(ast, Pow):
        return eval_univariate(ast.base, q) ** ast.exponent
    if isinstance(ast, Neg):
        return -eval_univariate(ast.operand, q)
    if isinstance(ast, Paren):
        return eval_univariate(ast.inner, q)
    raise ExprSyntaxError(f"{type(ast).__name__} cannot appear in a polynomial in T")


def parse_element(src: str, q: QParam, substitute_q: bool = True) -> AlgebraElement:
    """Parse and evaluate in one step."""
    element = eval_expr(parse_expr(src, q, substitute_q), q)
    logger.debug(f"Parsed {src!r} over q={q}")
    return element


def parse_poly(src: str, q: QParam, substitute_q: bool = True) -> UniPoly:
    return eval_univariate(parse_poly_expr(src, q, substitute_q), q)
