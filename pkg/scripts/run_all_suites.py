"""Run every relation suite at the default configuration and write one JSON report per suite.

    python3 scripts/run_all_suites.py --out reports/ --level 8 --max-index 2
"""

from __future__ import annotations

import argparse
import json
import time
from pathlib import Path

from etaxi.cli import VERIFY_SUITES, run_suite
from etaxi.config import load_config


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="reports", help="directory for the JSON reports")
    ap.add_argument("--level", default="8")
    ap.add_argument("--max-index", type=int, default=2)
    ap.add_argument("--config", default=None)
    args = ap.parse_args()
    cfg = load_config(args.config, {"level": args.level, "max_index": args.max_index})
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    summary = {}
    for name in VERIFY_SUITES:
        t0 = time.perf_counter()
        rep = run_suite(name, cfg)
        (out / f"{name}.json").write_text(rep.to_json() + "\n")
        summary[name] = rep.status
        print(f"{name:26s} {rep.status:13s} {rep.checked:5d} checks  {time.perf_counter() - t0:6.1f}s", flush=True)
    (out / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return 0 if all(v == "pass" for v in summary.values()) else 1


if __name__ == "__main__":
    raise SystemExit(main())
