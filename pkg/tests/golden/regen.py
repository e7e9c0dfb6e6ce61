"""Rewrite the golden outputs from cases.json; run only after an intended format change."""

import io
import json
from pathlib import Path

from cdala.cli import main

HERE = Path(__file__).parent

for case in json.loads((HERE / "cases.json").read_text()):
    buf = io.StringIO()
    argv = [a.replace("{golden}", str(HERE)) for a in case["argv"]]
    code = main(argv, out=buf)
    assert code == case["exit"], (case, code)
    (HERE / case["file"]).write_text(buf.getvalue())
    print(case["file"], code)
