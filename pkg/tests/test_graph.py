import asyncio
import json
import sys
import tempfile
from pathlib import Path
import unittest

sys.path.append(str(Path(__file__).resolve().parents[1] / "src"))

from paracorp.config import PipelineConfig
from paracorp.graph import compile_graph
from paracorp.stages.ingest import route_after_dedupe


VERSES = [
    ("Si Jehova miingon kang Moises", "Sinabi ni Jehova kay Moises"),
    ("Ug si Jehova nagpakita kaniya", "Ang Panginoon"),
    ("Si Jehova nagsulti pag-usab", "Nagsalita muli si Jehova"),
    ("Si Jehova maayo", "Mabuti si Jehova"),
    ("Siya miadto ngadto sa bukid", "Siya paroon bundok"),
    ("Ang katawhan milakaw ngadto sa Egipto", "Bayan paroon Egipto"),
    ("Sila miadto ngadto sa balay", "Sila paroon bahay"),
    ("Kami mibiya ngadto sa dagat", "Kami paroon dagat"),
    ("Sila mikanaog ngadto sa suba", "Pumaroon tayo tubig"),
    ("Amen", "Amen"),
    ("Amen", "Siya nawa"),
    ("Ang yuta", "Ang lupa"),
]


def write_bible(path, verses):
    segs = "".join(f'<seg id="b.EXO.1.{i}">{text}</seg>' for i, text in enumerate(verses, start=1))
    path.write_text(f"<cesDoc><text><body>{segs}</body></text></cesDoc>", encoding="utf-8")


class PipelineGraphTests(unittest.TestCase):
    def _run(self, tmp, **extra):
        source_xml = Path(tmp) / "ceb.xml"
        target_xml = Path(tmp) / "tl.xml"
        write_bible(source_xml, [source for source, _ in VERSES])
        write_bible(target_xml, [target for _, target in VERSES])
        state = {
            "config": PipelineConfig(jobs=1, split_ratios=(0.6, 0.2, 0.2)),
            "source_xml": str(source_xml),
            "target_xml": str(target_xml),
            "source_lang": "ceb",
            "target_lang": "tl",
            "out_dir": tmp,
            "outputs": {},
            "counts": {},
            "stages_completed": [],
            **extra,
        }
        return asyncio.run(compile_graph().ainvoke(state))

    def test_route_after_dedupe(self):
        self.assertEqual(route_after_dedupe({"watch_names": ["jehova"]}), "table")
        self.assertEqual(route_after_dedupe({"rules_path": "rules.json"}), "table")
        self.assertEqual(route_after_dedupe({"watch_names": [], "watch_verbs": []}), "split")

    def test_plain_run_skips_correction(self):
        with tempfile.TemporaryDirectory() as tmp:
            result = self._run(tmp)
            self.assertEqual(result["stages_completed"], ["ingest", "dedupe", "split", "export"])
            self.assertEqual(result["counts"]["duplicates_dropped"], 1)
            self.assertEqual(
                sum(result["counts"][f"{name}_pairs"] for name in ("train", "valid", "test")), 11
            )
            self.assertTrue(Path(result["outputs"]["test_src"]).is_file())

    def test_watched_words_are_corrected(self):
        with tempfile.TemporaryDirectory() as tmp:
            result = self._run(tmp, watch_names=["jehova"], watch_verbs=["ngadto"])
            self.assertEqual(
                result["stages_completed"], ["ingest", "dedupe", "table", "canonicalize", "split", "export"]
            )
            rules = json.loads(Path(result["outputs"]["rules"]).read_text(encoding="utf-8"))
            by_word = {rule["source_word"]: rule for rule in rules}
            self.assertEqual(by_word["jehova"]["canonical"], "jehova")
            self.assertEqual(by_word["jehova"]["variants"], ["panginoon"])
            self.assertEqual(by_word["ngadto"]["canonical"], "paroon")
            self.assertEqual(by_word["ngadto"]["variants"], ["pumaroon"])

            for pair in result["pairs"]:
                if "jehova" in pair.source.tokens:
                    self.assertIn("jehova", pair.target.tokens)
                if "ngadto" in pair.source.tokens:
                    self.assertNotIn("pumaroon", pair.target.tokens)


if __name__ == "__main__":
    unittest.main()
