"""Replay the committed three-iteration demo pipeline end to end.

Every LLM exchange comes from data/replay/freesolv_demo.jsonl, so this is
fully offline and byte-reproducible; artifacts land in runs/freesolv_demo.
"""

import json
from pathlib import Path

from molconcepts.pipeline import RunConfig, run_pipeline

ROOT = Path(__file__).resolve().parents[1]

data = json.loads((ROOT / "configs" / "freesolv_demo.json").read_text())
for key in ("dataset", "split", "transcripts"):
    data[key] = str(ROOT / data[key])
data["run_dir"] = str(ROOT / "runs" / "freesolv_demo")
config = RunConfig.from_dict(data)

reports = run_pipeline(config)
for report in reports:
    concepts = [c["name"] for c in report.concepts_in]
    print(f"iteration {report.iteration}")
    print(f"  concepts in : {concepts}")
    print(f"  kept        : {report.kept_concepts}")
    best = report.metrics[report.best_predictor]
    print(f"  best model  : {report.best_predictor} "
          f"(valid rmse {best['valid']['rmse']:.3f}, "
          f"test rmse {best['test']['rmse']:.3f})")
print(f"\nartifacts: {config.run_dir}")
