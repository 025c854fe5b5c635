#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Terminal highlighter for warpiso.
Uses Pygments to colour text and JSON results when they are written to a terminal.
"""

from pygments import highlight
from pygments.formatters import TerminalFormatter
from pygments.lexers import get_lexer_by_name
from pygments.lexers.special import TextLexer
from pygments.util import ClassNotFound

# Output format -> Pygments lexer name
FORMAT_LANGUAGES = {
    "text": "ini",
    "json": "json",
}


def get_lexer(language):
    """Get a lexer by name, falling back to plain text"""
    try:
        return get_lexer_by_name(language, stripnl=False)
    except ClassNotFound:
        return TextLexer()


def highlight_text(text, language):
    """Colour text for an ANSI terminal"""
    return highlight(text, get_lexer(language), TerminalFormatter())


def highlight_output(text, output_format, stream):
    """
    Highlight an artifact only when it goes to an interactive terminal.

    CSV and anything written to a file or pipe pass through unchanged.
    """
    language = FORMAT_LANGUAGES.get(output_format)
    isatty = getattr(stream, "isatty", None)
    if language is None or isatty is None or not isatty():
        return text
    return highlight_text(text, language)
