"""
The JSON batch interface
========================

Problems go in as JSON documents, reports come out as JSON with every
rational rendered exactly.  The same machinery backs the ``schottkyfold``
command line (also reachable as ``python -m schottkyfold``), with exit
codes 0 = good, 1 = not good, 2 = redundant, 3 = invalid input.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

from schottkyfold import cli

problem = {
    "p": 2,
    "ell": 7,
    "points": ["1336/3", "-355", "-110", "86", "0", "7", "1", "inf"],
    "options": {"trace": True, "verify_depth": 4},
}

report, exit_code = cli.run(cli.parse_problem(json.dumps(problem)))
print("exit code:", exit_code)
print("verdict:", report["verdict"]["kind"])
print("optimal configuration:", report["verdict"]["s_min"])
print("folds performed:")
for fold in report["folds"]:
    print(f"  (i={fold['i']}, j={fold['j']}, n={fold['n']}) "
          f"indices {fold['indices']} -> {fold['result']}")
print("audit witness:", report["audit"]["witness"])

# the same run through the installed command line, plus DOT output
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "problem.json"
    path.write_text(json.dumps(problem), encoding="utf-8")
    proc = subprocess.run(
        [sys.executable, "-m", "schottkyfold",
         "--input", str(path), "--dot", str(Path(tmp) / "forest"), "--quiet"],
        capture_output=True,
        text=True,
    )
    print("\ncommand line exited with", proc.returncode)
    payload = json.loads(proc.stdout)
    print("stages rendered to DOT:", sorted(payload["trees"]))
    print("files written:", sorted(p.name for p in Path(tmp).glob("*.dot")))
