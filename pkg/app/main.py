"""Command-line entrypoint when running from a source checkout."""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.append(str(Path(__file__).resolve().parents[1] / "src"))

from paracorp.cli import main  # noqa: E402


if __name__ == "__main__":
    main()
