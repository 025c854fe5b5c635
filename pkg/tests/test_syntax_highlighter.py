import io

from src.utils.syntax_highlighter import get_lexer, highlight_output


class Terminal(io.StringIO):
    def isatty(self):
        return True


def test_pipes_are_left_alone():
    text = "bound = 1.66711\n"
    assert highlight_output(text, "text", io.StringIO()) == text


def test_terminal_output_is_coloured():
    coloured = highlight_output("bound = 1.66711\n", "text", Terminal())
    assert "\x1b[" in coloured
    assert "1.66711" in coloured


def test_csv_is_never_coloured():
    text = "V,A\n0.0,1.0\n"
    assert highlight_output(text, "csv", Terminal()) == text


def test_unknown_language_falls_back_to_plain_text():
    assert get_lexer("no-such-language").name == "Text only"
