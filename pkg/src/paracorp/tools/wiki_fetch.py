"""Polite Wikipedia article fetcher writing the offline article layout."""

from __future__ import annotations

import logging
import time
from collections.abc import Callable, Mapping, Sequence
from pathlib import Path

import requests

from ..config import PipelineConfig, get_settings
from ..errors import FetchError
from ..wiki import build_article_url

logger = logging.getLogger(__name__)


def article_filename(title: str, language_code: str) -> str:
    """``<Title_With_Underscores>.<lang>.html``; path separators are not allowed."""
    safe_title = title.strip().replace(" ", "_").replace("/", "_")
    return f"{safe_title}.{language_code}.html"


class WikiFetcher:
    """Sequential fetcher: one request in flight, a fixed delay between
    requests and a cap on the total number of requests."""

    def __init__(
        self,
        config: PipelineConfig,
        session: requests.Session | None = None,
        sleep: Callable[[float], None] = time.sleep,
        timeout: float = 30,
    ) -> None:
        self.config = config
        self.session = session or requests.Session()
        self.session.headers.setdefault("User-Agent", get_settings().user_agent)
        self.sleep = sleep
        self.timeout = timeout
        self.requests_made = 0

    def get(self, url: str) -> bytes:
        if self.requests_made >= self.config.max_requests:
            raise FetchError(f"request cap of {self.config.max_requests} reached")
        if self.requests_made:
            self.sleep(self.config.fetch_delay_ms / 1000)
        self.requests_made += 1

        try:
            response = self.session.get(url, timeout=self.timeout)
            response.raise_for_status()
        except requests.RequestException as exc:
            raise FetchError(f"GET {url} failed: {exc}") from exc
        return response.content

    def fetch_categories(
        self,
        titles_by_category: Mapping[str, Sequence[str]],
        language_codes: Sequence[str],
        out_dir: str | Path,
    ) -> list[Path]:
        """Download every title in every language into ``<out>/<category>/``.

        Failed pages are logged and skipped; reaching the request cap stops the run.
        """
        written: list[Path] = []
        for category in sorted(titles_by_category):
            target_dir = Path(out_dir) / category
            target_dir.mkdir(parents=True, exist_ok=True)
            for title in titles_by_category[category]:
                for code in language_codes:
                    url = build_article_url(code, title, self.config)
                    try:
                        content = self.get(url)
                    except FetchError as exc:
                        if self.requests_made >= self.config.max_requests:
                            logger.warning("Stopping: %s", exc)
                            return written
                        logger.warning("Skipping %s: %s", url, exc)
                        continue
                    path = target_dir / article_filename(title, code)
                    path.write_bytes(content)
                    written.append(path)
                    logger.info("Fetched %s -> %s", url, path)
        return written
