import sys
from pathlib import Path
import unittest

from hypothesis import given, strategies as st

sys.path.append(str(Path(__file__).resolve().parents[1] / "src"))

from paracorp.config import PipelineConfig
from paracorp.errors import TextDecodeError
from paracorp.text import clean, detokenize, make_sentence, sentence_from_tokens, tokenize


TEXT_ALPHABET = "abcdefgñAÑBZ-019 .,:;!?()\"«»[]'’\t\n<>/\x07"


class CleanTests(unittest.TestCase):
    def test_strips_markup_and_control_characters(self):
        self.assertEqual(clean("<p>Sa  sinugdan\x07 <b>nagbuhat</b></p>\n"), "Sa sinugdan nagbuhat")

    def test_nested_tag_leftovers_are_removed(self):
        self.assertNotIn("<", clean("<<a>b>Dios"))

    def test_composes_to_nfc(self):
        self.assertEqual(clean("Espan\u0303a"), "Espa\u00f1a")

    def test_bytes_are_decoded(self):
        self.assertEqual(clean("Ang Dios".encode("utf-8")), "Ang Dios")

    def test_invalid_utf8_reports_offset(self):
        with self.assertRaises(TextDecodeError) as ctx:
            clean(b"ab\xffcd")
        self.assertEqual(ctx.exception.offset, 2)

    @given(st.text(alphabet=TEXT_ALPHABET, max_size=60))
    def test_clean_is_idempotent(self, text):
        once = clean(text)
        self.assertEqual(clean(once), once)


class TokenizeTests(unittest.TestCase):
    def test_punctuation_is_split_and_text_lowercased(self):
        self.assertEqual(
            tokenize("Sa sinugdan, gibuhat sa Dios ang langit."),
            ["sa", "sinugdan", ",", "gibuhat", "sa", "dios", "ang", "langit", "."],
        )

    def test_inner_apostrophe_stays_in_word(self):
        self.assertEqual(tokenize("Siya'y miingon"), ["siya'y", "miingon"])

    def test_outer_apostrophes_are_tokens(self):
        self.assertEqual(tokenize("'Oo'"), ["'", "oo", "'"])

    def test_hyphen_does_not_split(self):
        self.assertEqual(tokenize("ika-1 nga adlaw"), ["ika-1", "nga", "adlaw"])

    def test_lowercase_can_be_disabled(self):
        config = PipelineConfig(lowercase=False, jobs=1)
        self.assertEqual(tokenize("Ang Dios", config), ["Ang", "Dios"])

    @given(st.text(alphabet=TEXT_ALPHABET, max_size=60))
    def test_tokenize_is_a_fixed_point(self, text):
        tokens = tokenize(clean(text))
        self.assertEqual(tokenize(detokenize(tokens)), tokens)


class SentenceTests(unittest.TestCase):
    def test_make_sentence_keeps_cleaned_raw(self):
        sentence = make_sentence("  <i>Ang</i> Abra. ")
        self.assertEqual(sentence.raw, "Ang Abra.")
        self.assertEqual(sentence.tokens, ("ang", "abra", "."))
        self.assertEqual(len(sentence), 3)

    def test_sentence_from_tokens_joins_with_spaces(self):
        sentence = sentence_from_tokens(["ang", "paroon"])
        self.assertEqual(sentence.raw, "ang paroon")

    def test_tokens_with_whitespace_are_rejected(self):
        with self.assertRaises(ValueError):
            sentence_from_tokens(["ang dios"])


if __name__ == "__main__":
    unittest.main()
