import subprocess
import sys
from pathlib import Path

DEMO = Path(__file__).resolve().parent.parent / "demos" / "walkthrough.py"


def test_walkthrough_runs_clean():
    result = subprocess.run(
        [sys.executable, str(DEMO)], capture_output=True, text=True, timeout=60
    )
    assert result.returncode == 0, result.stderr
    assert "MutualExclusion" in result.stdout  # the deliberate first mistake
    assert "(5, 0, 0)  x2  mean 2.5" in result.stdout
    assert "exported:" in result.stdout
