"""Error type shared by the whole package.

Every failure mode carries a stable machine-readable ``code`` string so that
callers (and the CLI) can react to *which* contract was violated without
parsing prose.
"""

from __future__ import annotations


class QuantLogicError(Exception):
    """Raised on any contract violation; ``code`` identifies the violation."""

    def __init__(self, code: str, message: str, position: int | None = None):
        self.code = code
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        self.message = message
        super().__init__(f"{code}: {message}")


class FormulaSyntaxError(QuantLogicError):
    """Tokenizer/parser failure; ``position`` is a character offset."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__("SYNTAX_ERROR", message, position)
