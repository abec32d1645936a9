import sys
import tempfile
from pathlib import Path
import unittest

sys.path.append(str(Path(__file__).resolve().parents[1] / "src"))

from paracorp.dataset import (
    export_parallel,
    import_parallel,
    read_corpus,
    seeded_shuffle,
    split_corpus,
    write_corpus,
)
from paracorp.errors import ConfigError, CorpusFormatError, ParallelAlignmentError, RoundingConflictError
from paracorp.state import BibleVerse, ImportedLine, SentencePair, VerseId, WikiSentence
from paracorp.text import make_sentence


def corpus(size):
    return [
        SentencePair(
            pair_id=i,
            origin=ImportedLine(line=i + 1),
            source=make_sentence(f"tinubdan {i}"),
            target=make_sentence(f"target {i}"),
        )
        for i in range(size)
    ]


class SplitTests(unittest.TestCase):
    def test_corpus_sized_split(self):
        result = split_corpus(corpus(6510), (0.8, 0.1, 0.1), seed=0)
        self.assertEqual([len(part) for part in result.parts().values()], [5208, 651, 651])

    def test_ten_pairs(self):
        result = split_corpus(corpus(10), (0.8, 0.1, 0.1), seed=3)
        self.assertEqual((len(result.train), len(result.valid), len(result.test)), (8, 1, 1))

    def test_partition_and_determinism(self):
        pairs = corpus(500)
        first = split_corpus(pairs, (0.7, 0.2, 0.1), seed=42)
        second = split_corpus(pairs, (0.7, 0.2, 0.1), seed=42)
        ids = [[p.pair_id for p in part] for part in first.parts().values()]
        self.assertEqual(ids, [[p.pair_id for p in part] for part in second.parts().values()])
        flat = [i for part in ids for i in part]
        self.assertEqual(sorted(flat), list(range(500)))

        other = split_corpus(pairs, (0.7, 0.2, 0.1), seed=43)
        self.assertNotEqual(ids[0], [p.pair_id for p in other.train])

    def test_shuffle_is_a_permutation_fixed_by_seed(self):
        shuffled = seeded_shuffle(range(20), 5)
        self.assertEqual(sorted(shuffled), list(range(20)))
        self.assertEqual(shuffled, seeded_shuffle(list(range(20)), 5))

    def test_empty_split_after_rounding(self):
        with self.assertRaises(RoundingConflictError):
            split_corpus(corpus(3), (0.8, 0.1, 0.1))

    def test_too_small_and_bad_ratios(self):
        with self.assertRaises(ValueError):
            split_corpus(corpus(2))
        with self.assertRaises(ConfigError):
            split_corpus(corpus(10), (0.5, 0.5, 0.5))


class CorpusFileTests(unittest.TestCase):
    def test_round_trip_keeps_ids_and_origins(self):
        pairs = [
            SentencePair(
                pair_id=4,
                origin=BibleVerse(verse_id=VerseId(book="GEN", chapter=1, verse=1)),
                source=make_sentence("Sa sinugdan gibuhat sa Dios ang langit."),
                target=make_sentence("Nang pasimula ay nilikha ng Dios ang langit."),
            ),
            SentencePair(
                pair_id=9,
                origin=WikiSentence(category="regions", article_title="Caraga", source_index=0, target_index=2),
                source=make_sentence("Ang Caraga maoy usa sa mga rehiyon."),
                target=make_sentence("Ang Caraga ay isang rehiyon."),
            ),
        ]
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "corpus.jsonl"
            self.assertEqual(write_corpus(pairs, path), 2)
            self.assertEqual(read_corpus(path), pairs)

    def test_bad_record_reports_line(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "corpus.jsonl"
            write_corpus(corpus(1), path)
            with open(path, "a", encoding="utf-8") as handle:
                handle.write('{"pair_id": 1, "origin": {"kind": "imported", "line": 2}}\n')
            with self.assertRaises(CorpusFormatError) as ctx:
                read_corpus(path)
            self.assertIn(":2:", str(ctx.exception))


class BitextTests(unittest.TestCase):
    def test_export_is_byte_exact(self):
        pairs = [
            SentencePair(
                pair_id=0,
                origin=ImportedLine(line=1),
                source=make_sentence("Ang Dios, siya'y maayo."),
                target=make_sentence("Ang Diyos ay mabuti."),
            )
        ]
        with tempfile.TemporaryDirectory() as tmp:
            source_path, target_path = export_parallel(pairs, Path(tmp) / "test")
            self.assertEqual(source_path.name, "test.src")
            self.assertEqual(source_path.read_bytes(), "ang dios , siya'y maayo .\n".encode("utf-8"))
            self.assertEqual(target_path.read_bytes(), b"ang diyos ay mabuti .\n")

    def test_export_rejects_directory_prefixes(self):
        pairs = corpus(2)
        with tempfile.TemporaryDirectory() as tmp:
            for prefix in (".", f"{tmp}/", tmp, Path(tmp) / ".."):
                with self.assertRaises(ConfigError):
                    export_parallel(pairs, prefix)
            self.assertEqual(list(Path(tmp).iterdir()), [])

    def test_import_round_trip(self):
        pairs = corpus(5)
        with tempfile.TemporaryDirectory() as tmp:
            source_path, target_path = export_parallel(pairs, Path(tmp) / "train")
            imported = import_parallel(source_path, target_path)
        self.assertEqual([p.source.tokens for p in imported], [p.source.tokens for p in pairs])
        self.assertEqual([p.target.tokens for p in imported], [p.target.tokens for p in pairs])
        self.assertEqual(imported[2].origin, ImportedLine(line=3))

    def test_line_count_mismatch(self):
        with tempfile.TemporaryDirectory() as tmp:
            src = Path(tmp) / "a.src"
            tgt = Path(tmp) / "a.tgt"
            src.write_text("".join(f"linya {i}\n" for i in range(5)), encoding="utf-8")
            tgt.write_text("".join(f"linya {i}\n" for i in range(4)), encoding="utf-8")
            with self.assertRaises(ParallelAlignmentError) as ctx:
                import_parallel(src, tgt)
        self.assertIn("(5, 4)", str(ctx.exception))
        self.assertEqual(ctx.exception.counts, (5, 4))

    def test_empty_line_is_rejected(self):
        with tempfile.TemporaryDirectory() as tmp:
            src = Path(tmp) / "a.src"
            tgt = Path(tmp) / "a.tgt"
            src.write_text("usa\n\n", encoding="utf-8")
            tgt.write_text("isa\ndalawa\n", encoding="utf-8")
            with self.assertRaises(CorpusFormatError):
                import_parallel(src, tgt)


if __name__ == "__main__":
    unittest.main()
