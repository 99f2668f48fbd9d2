#!/usr/bin/env python3
"""Regenerate examples/scenarios/*.expected.json from the built CLI (timing removed).

Usage: tools/regen_goldens.py build/superorbit
"""
import json
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
SCN = ROOT / "examples" / "scenarios"

CASES = {
    "running_example": ["orbit isotropy", "orbit invariants", "orbit quotient-check"],
    "odd_heisenberg": ["orbit check-rank", "orbit invariants", "orbit quotient-check"],
    "clifford": ["orbit check-rank", "orbit isotropy", "kks kernel"],
    "gamma_grid": ["orbit check-rank"],
    "heisenberg_isotropy": ["orbit isotropy"],
    "kks_heisenberg": ["kks matrix", "kks kernel", "kks closed"],
    "broken_jacobi": ["kks closed"],
}


def main():
    exe = sys.argv[1]
    for scn, cmds in CASES.items():
        for cmd in cmds:
            args = [exe, "--json", *cmd.split(), str(SCN / f"{scn}.scn")]
            out = subprocess.run(args, capture_output=True, text=True)
            report = json.loads(out.stdout)
            report.pop("timing_ms", None)
            report["exit_code"] = out.returncode
            name = SCN / f"{scn}.{cmd.replace(' ', '-')}.expected.json"
            name.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
            print(name.name, report["verdict"], out.returncode)


if __name__ == "__main__":
    main()
