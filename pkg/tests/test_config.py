import os
import sys
import tempfile
from pathlib import Path
import unittest
from unittest import mock

sys.path.append(str(Path(__file__).resolve().parents[1] / "src"))

from paracorp.config import CONFIG_ENV_VAR, PipelineConfig, get_settings, load_pipeline_config, read_config_file
from paracorp.errors import ConfigError


class PipelineConfigTests(unittest.TestCase):
    def test_defaults(self):
        config = PipelineConfig()
        self.assertTrue(config.lowercase)
        self.assertEqual(config.dice_threshold, 0.1)
        self.assertEqual(config.max_candidates, 12)
        self.assertEqual((config.ngram_min, config.ngram_max, config.min_support), (3, 6, 5))
        self.assertEqual(config.split_ratios, (0.8, 0.1, 0.1))
        self.assertEqual(config.language_codes, frozenset({"ceb", "tl"}))
        self.assertGreaterEqual(config.jobs, 1)

    def test_snapshot_is_sorted_json(self):
        snapshot = PipelineConfig(jobs=2).snapshot()
        self.assertEqual(snapshot["categories"], ["cities", "provinces", "regions", "tourism"])
        self.assertEqual(snapshot["split_ratios"], [0.8, 0.1, 0.1])

    def test_abbreviations_are_normalized(self):
        config = PipelineConfig(abbreviations={"Dr.", " Gng "}, jobs=1)
        self.assertEqual(config.abbreviations, frozenset({"dr", "gng"}))


class LoadConfigTests(unittest.TestCase):
    def _write(self, directory, text):
        path = Path(directory) / "paracorp.env"
        path.write_text(text, encoding="utf-8")
        return path

    def test_file_values_and_flag_overrides(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = self._write(tmp, "DICE_THRESHOLD=0.2\nSPLIT_RATIOS=0.7,0.2,0.1\nLOWERCASE=false\nJOBS=1\n")
            config = load_pipeline_config(path, {"dice_threshold": 0.3, "rng_seed": None})
        self.assertEqual(config.dice_threshold, 0.3)
        self.assertEqual(config.split_ratios, (0.7, 0.2, 0.1))
        self.assertFalse(config.lowercase)
        self.assertEqual(config.rng_seed, 0)

    def test_unknown_key(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = self._write(tmp, "DICE=0.2\n")
            with self.assertRaises(ConfigError):
                read_config_file(path)

    def test_missing_file(self):
        with self.assertRaises(ConfigError):
            read_config_file("/nonexistent/paracorp.env")

    def test_invalid_values(self):
        with self.assertRaises(ConfigError):
            load_pipeline_config(None, {"split_ratios": (0.5, 0.5, 0.5), "jobs": 1})
        with self.assertRaises(ConfigError):
            load_pipeline_config(None, {"ngram_min": 7, "jobs": 1})
        with self.assertRaises(ConfigError):
            load_pipeline_config(None, {"dice_threshold": 0.0, "jobs": 1})

    def test_config_path_from_environment(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = self._write(tmp, "MIN_SUPPORT=9\n")
            with mock.patch.dict(os.environ, {CONFIG_ENV_VAR: str(path)}):
                self.assertEqual(get_settings().config_path, str(path))
                self.assertEqual(load_pipeline_config(overrides={"jobs": 1}).min_support, 9)


if __name__ == "__main__":
    unittest.main()
