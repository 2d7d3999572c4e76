"""
Command line jobs
=================

The `hidalp` command writes canonical JSON: modsym builds eigen-symbols,
congruence compares two of them (FILE#LABEL), branch checks crossings and
ramification.  Exit status 2 flags bad input, 3 a falsified property.
"""
import json
import subprocess
import tempfile
from pathlib import Path

tmp = Path(tempfile.mkdtemp())
m = tmp / "m23.json"
subprocess.run(["hidalp", "modsym", "--level", "23", "--weight", "2", "--prime", "5",
                "--p-precision", "12", "--out", str(m)], check=True)
labels = [s["label"] for s in json.loads(m.read_text())["symbols"] if s["sign"] == 1]
print("symbols:", labels)

out = subprocess.run(["hidalp", "congruence", f"{m}#{labels[0]}", f"{m}#{labels[1]}", "--p-precision", "10"],
                     capture_output=True, text=True)
rep = json.loads(out.stdout)
print("congruence:", rep["r_q"], rep["r_L"], rep["verdict"], " exit", out.returncode)

bad = subprocess.run(["hidalp", "modsym", "--level", "2", "--weight", "2", "--prime", "5"],
                     capture_output=True, text=True)
print("level 2: exit", bad.returncode, "-", bad.stderr.strip())
