# app/utils/lexer.py
from pygments.lexer import RegexLexer
from pygments.token import Error, Name, Number, Operator, Punctuation, Whitespace


class QHeisLexer(RegexLexer):
    """Lexer for the element DSL: A, B, q, T, rationals, + - * ^ and parentheses."""

    name = "QHeis"
    aliases = ["qheis"]
    filenames = []

    tokens = {
        "root": [
            (r"\s+", Whitespace),
            (r"\d+/\d+|\d+", Number),
            (r"[AB]", Name.Builtin),
            (r"q", Name.Constant),
            (r"T", Name.Variable),
            (r"[+\-*^]", Operator),
            (r"[()]", Punctuation),
            (r".", Error),
        ]
    }


def tokenize(src: str):
    """Yield (position, token type, text), skipping whitespace."""
    for position, token, text in QHeisLexer().get_tokens_unprocessed(src):
        if token is Whitespace:
            continue
        yield position, token, text
