"""
Driving the command line tool
=============================

The same calls the ``biquad`` executable makes, run in process.
"""

import io
import json

from biquad.cli import run_command

out = io.StringIO()
run_command(["analyze", "u-sl2"], out)
print(out.getvalue())

out = io.StringIO()
code = run_command(["analyze", "quantum-plane", "--format", "json"], out)
payload = json.loads(out.getvalue())
print(code, payload["verdict"])

out = io.StringIO()
run_command(["normalize", "weyl-1", "--word", "x2 x1^2"], out)
print(out.getvalue().strip())
