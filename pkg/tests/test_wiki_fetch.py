import sys
import tempfile
from pathlib import Path
import unittest
from unittest import mock

import requests

sys.path.append(str(Path(__file__).resolve().parents[1] / "src"))

from paracorp.config import PipelineConfig
from paracorp.errors import FetchError
from paracorp.tools.wiki_fetch import WikiFetcher, article_filename


def fake_session(failing_urls=()):
    session = mock.MagicMock()
    session.headers = {}

    def get(url, timeout):
        if url in failing_urls:
            raise requests.ConnectionError("unreachable")
        response = mock.MagicMock()
        response.content = f"<p>{url}</p>".encode("utf-8")
        return response

    session.get.side_effect = get
    return session


class WikiFetcherTests(unittest.TestCase):
    def test_article_filename(self):
        self.assertEqual(article_filename("Metro Manila", "tl"), "Metro_Manila.tl.html")

    def test_fetch_writes_offline_layout_with_delay(self):
        sleeps = []
        session = fake_session()
        fetcher = WikiFetcher(PipelineConfig(fetch_delay_ms=250, jobs=1), session=session, sleep=sleeps.append)
        with tempfile.TemporaryDirectory() as tmp:
            written = fetcher.fetch_categories({"regions": ["Metro Manila"]}, ["ceb", "tl"], tmp)
            self.assertEqual([p.name for p in written], ["Metro_Manila.ceb.html", "Metro_Manila.tl.html"])
            self.assertEqual(
                (Path(tmp) / "regions" / "Metro_Manila.ceb.html").read_bytes(),
                b"<p>https://ceb.wikipedia.org/wiki/Metro_Manila</p>",
            )
        self.assertEqual(sleeps, [0.25])
        self.assertIn("User-Agent", session.headers)

    def test_request_cap_stops_the_run(self):
        fetcher = WikiFetcher(PipelineConfig(max_requests=3, jobs=1), session=fake_session(), sleep=lambda _: None)
        with tempfile.TemporaryDirectory() as tmp:
            written = fetcher.fetch_categories({"cities": ["Cebu", "Davao"]}, ["ceb", "tl"], tmp)
        self.assertEqual(len(written), 3)
        with self.assertRaises(FetchError):
            fetcher.get("https://ceb.wikipedia.org/wiki/Iloilo")

    def test_failed_page_is_skipped(self):
        failing = {"https://tl.wikipedia.org/wiki/Cebu"}
        fetcher = WikiFetcher(PipelineConfig(jobs=1), session=fake_session(failing), sleep=lambda _: None)
        with tempfile.TemporaryDirectory() as tmp:
            written = fetcher.fetch_categories({"cities": ["Cebu"]}, ["ceb", "tl"], tmp)
        self.assertEqual([p.name for p in written], ["Cebu.ceb.html"])


if __name__ == "__main__":
    unittest.main()
