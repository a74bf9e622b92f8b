#!/usr/bin/env python3
"""Render every built-in demonstration figure to a directory (default
figures/), one SVG per figure."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from taxisect.export import emit_svg  # noqa: E402
from taxisect.figures import FIGURES  # noqa: E402


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="figures", help="output directory")
    args = parser.parse_args()

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, build in sorted(FIGURES.items()):
        path = out_dir / f"{name}.svg"
        path.write_text(emit_svg(build()), encoding="utf-8")
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
