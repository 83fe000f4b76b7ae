import csv
import json
from pathlib import Path


def write_rows(path, rows, meta=None):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    if meta is not None:
        Path(f"{path}.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    print(f"wrote {path} ({len(rows)} rows)")
