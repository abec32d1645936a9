import math
import sys
from pathlib import Path
import unittest

from hypothesis import given, settings, strategies as st

sys.path.append(str(Path(__file__).resolve().parents[1] / "src"))

from paracorp.bleu import bleu_corpus, bleu_sentence, compare_systems, missing_reference_tokens


def reference_bleu(hypotheses, references, smooth=False):
    """Straightforward BLEU over n = 1..4.

    An order with no n-grams on either side is skipped; add-one smoothing
    touches orders 2-4 once some unigram matches.
    """
    matches = [0] * 4
    totals = [0] * 4
    ref_totals = [0] * 4
    hyp_len = ref_len = 0
    for hyp, ref in zip(hypotheses, references):
        hyp_len += len(hyp)
        ref_len += len(ref)
        for n in range(1, 5):
            hyp_grams = [tuple(hyp[i : i + n]) for i in range(len(hyp) - n + 1)]
            ref_grams = [tuple(ref[i : i + n]) for i in range(len(ref) - n + 1)]
            totals[n - 1] += len(hyp_grams)
            ref_totals[n - 1] += len(ref_grams)
            for gram in set(hyp_grams):
                matches[n - 1] += min(hyp_grams.count(gram), ref_grams.count(gram))
    if smooth and matches[0] > 0:
        for n in range(1, 4):
            matches[n] += 1
            totals[n] += 1

    logs = []
    for m, t, r in zip(matches, totals, ref_totals):
        if t == 0 and r == 0:
            continue
        if m == 0:
            return 0.0
        logs.append(math.log(m / t))
    if not logs:
        return 100.0
    bp = 1.0 if hyp_len > ref_len else math.exp(1 - ref_len / hyp_len)
    return 100 * bp * math.exp(sum(logs) / len(logs))


VOCAB = ["ang", "dios", "sa", "langit", "yuta", "ug", "tawo", "."]
sentences = st.lists(st.sampled_from(VOCAB), min_size=1, max_size=12)


class CorpusBleuTests(unittest.TestCase):
    @settings(max_examples=20, deadline=1000)
    @given(st.lists(st.lists(st.sampled_from(["a", "b", "c", "d", "e"]), min_size=1, max_size=10), min_size=1, max_size=8))
    def test_identity_scores_100(self, corpus):
        report = bleu_corpus(corpus, corpus)
        self.assertAlmostEqual(report.score, 100.0, delta=1e-9)
        self.assertEqual(report.formatted(), "100.00")

    def test_short_hypothesis_case(self):
        report = bleu_corpus([["a", "b", "c", "d"]], [["a", "b", "c", "d", "e"]])
        self.assertEqual(report.precisions, (1.0, 1.0, 1.0, 1.0))
        self.assertAlmostEqual(report.brevity_penalty, math.exp(-0.25))
        self.assertAlmostEqual(report.score, 77.88, delta=0.01)

    @settings(max_examples=150, deadline=None)
    @given(st.lists(st.tuples(sentences, sentences), min_size=1, max_size=10))
    def test_matches_reference_implementation(self, rows):
        hypotheses = [h for h, _ in rows]
        references = [r for _, r in rows]
        self.assertAlmostEqual(bleu_corpus(hypotheses, references).score, reference_bleu(hypotheses, references), places=9)

    def test_no_matching_unigram_scores_zero(self):
        self.assertEqual(bleu_corpus([["x", "y", "z", "w"]], [["a", "b", "c", "d"]]).score, 0.0)

    def test_empty_hypothesis_scores_zero(self):
        report = bleu_corpus([[]], [["a", "b"]])
        self.assertEqual(report.score, 0.0)
        self.assertEqual(report.brevity_penalty, 0.0)

    def test_length_mismatch(self):
        with self.assertRaises(ValueError):
            bleu_corpus([["a"]], [["a"], ["b"]])
        with self.assertRaises(ValueError):
            bleu_corpus([], [])

    def test_all_empty_corpus_is_a_perfect_match(self):
        report = bleu_corpus([[], []], [[], []])
        self.assertEqual(report.score, 100.0)
        self.assertEqual(report.brevity_penalty, 1.0)
        self.assertEqual(report.precisions, (None, None, None, None))

    def test_json_has_every_order(self):
        payload = bleu_corpus([["a", "b"]], [["a", "b"]]).to_json()
        self.assertEqual(payload["p3"], None)
        self.assertEqual(payload["bp"], 1.0)
        self.assertEqual(set(payload), {"score", "p1", "p2", "p3", "p4", "bp", "hyp_len", "ref_len", "smoothing"})


class SentenceBleuTests(unittest.TestCase):
    def test_identity(self):
        self.assertEqual(bleu_sentence(["ang", "dios"], ["ang", "dios"]).formatted(), "100.00")

    def test_smoothing_applies_once_a_unigram_matches(self):
        report = bleu_sentence(["at", "x", "y"], ["at", "z", "w"])
        self.assertEqual(report.precisions, (1 / 3, 1 / 3, 1 / 2, 1.0))
        self.assertAlmostEqual(report.score, 100 * (1 / 18) ** 0.25, places=9)
        self.assertEqual(report.formatted(), "48.55")

    def test_two_token_pair_is_smoothed_on_empty_orders(self):
        report = bleu_sentence(["ang", "dios"], ["ang", "tawo"])
        self.assertEqual(report.precisions, (0.5, 0.5, 1.0, 1.0))
        self.assertEqual(report.formatted(), "70.71")

    @settings(max_examples=150, deadline=None)
    @given(sentences, sentences)
    def test_matches_reference_implementation(self, hypothesis, reference):
        expected = reference_bleu([hypothesis], [reference], smooth=True)
        self.assertAlmostEqual(bleu_sentence(hypothesis, reference).score, expected, places=9)

    def test_no_unigram_match_is_zero(self):
        report = bleu_sentence(["x", "y"], ["a", "b"])
        self.assertEqual(report.score, 0.0)
        self.assertEqual(report.smoothing, "none")

    def test_empty_input(self):
        with self.assertRaises(ValueError):
            bleu_sentence([], ["a"])


class DiagnosticsTests(unittest.TestCase):
    def test_missing_reference_tokens(self):
        self.assertEqual(missing_reference_tokens(["a", "b", "b"], ["a", "c", "b", "d", "a"]), ["c", "d", "a"])

    def test_compare_systems(self):
        references = [["ang", "dios", "sa", "langit", "."]]
        comparison = compare_systems([["ang", "dios", "langit", "."]], references, references)
        self.assertEqual(comparison.candidate.formatted(), "100.00")
        self.assertGreater(comparison.delta, 0)


if __name__ == "__main__":
    unittest.main()
