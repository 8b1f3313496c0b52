"""Runs the CLI suite and validates the JSON report against the published schema."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def main(cli: str, schema_path: str) -> int:
    schema = json.loads(Path(schema_path).read_text())
    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp) / "report.json"
        proc = subprocess.run([cli, "suite", "--t", "0.5", "--out", str(out)], check=False)
        if proc.returncode != 0:
            print(f"suite exited with {proc.returncode}")
            return 1
        report = json.loads(out.read_text())
    jsonschema.validate(report, schema)
    print(f"report with {len(report['checks'])} checks validates")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1], sys.argv[2]))
