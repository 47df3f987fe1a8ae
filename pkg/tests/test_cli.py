import io
import json
import subprocess
import sys

import jsonschema
import pytest

from invspace.cli import run
from invspace.jsonio import (
    DECOMPOSITION_SCHEMA,
    POLYEXP_SCHEMA,
    SOLUTION_SCHEMA,
    polyexp_from_json,
)
from invspace.parser import parse_expression

SOLVE_ARGS = ["solve", "--domain", "seq", "y[n+2]-5*y[n+1]+6*y[n] = 2^n",
              "--roots", "2^1,3^1", "--initial", "1,2"]
KERNEL_ARGS = ["kernel", "--domain", "ode", "--lambda", "2", "--m", "3"]
CHECK_ARGS = ["check-invariant", "--domain", "seq", "n*2^n"]

SOLVE_GOLDEN = """\
equation: y[n+2] - 5*y[n+1] + 6*y[n] = 2^n
particular: (-1/2*n)*2^n
homogeneous: 2^n, 3^n
general: (-1/2*n)*2^n + c1*2^n + c2*3^n
solution: (-1/2*n)*2^n + 3^n
residual_verified: true
"""

KERNEL_GOLDEN = """\
kernel of (D - 2)^3, dimension 3:
  exp(2*t)
  (t)*exp(2*t)
  (t^2)*exp(2*t)
"""

CHECK_GOLDEN = """\
span dimension: 1
invariant: false
witness: (n)*2^n maps to (2*n + 2)*2^n, outside the span
closure dimension: 2
closure basis:
  (n)*2^n
  (2*n + 2)*2^n
decomposition of closure:
  lambda = 2, multiplicity 2: (n)*2^n, (2*n + 2)*2^n
full: true
"""


def invoke(args, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        old = sys.stdin
        sys.stdin = io.StringIO(stdin)
        try:
            code = run(args, out, err)
        finally:
            sys.stdin = old
    else:
        code = run(args, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize(
    "args, golden",
    [(SOLVE_ARGS, SOLVE_GOLDEN), (KERNEL_ARGS, KERNEL_GOLDEN), (CHECK_ARGS, CHECK_GOLDEN)],
)
def test_golden_outputs(args, golden):
    for _ in range(2):
        code, out, _ = invoke(args)
        assert code == 0
        assert out == golden


def test_solve_json_schema_and_reparse():
    code, out, _ = invoke(SOLVE_ARGS + ["--format", "json"])
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, SOLUTION_SCHEMA)
    sol, base = polyexp_from_json(payload["solution"])
    assert sol == parse_expression("(-1/2*n)*2^n + 3^n", base)


def test_decomposition_json_schema():
    code, out, _ = invoke(["decompose", "--domain", "seq", "2^n", "n*2^n", "3^n", "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, DECOMPOSITION_SCHEMA)
    assert [c["multiplicity"] for c in payload["components"]] == [2, 1]
    code, out, _ = invoke(CHECK_ARGS + ["--format", "json"])
    payload = json.loads(out)
    jsonschema.validate(payload, DECOMPOSITION_SCHEMA)
    assert payload["invariant"] is False
    witness, base = polyexp_from_json(payload["witness"])
    assert witness == parse_expression("n*2^n", base)


def test_kernel_json_reparses():
    _, out, _ = invoke(KERNEL_ARGS + ["--format", "json"])
    payload = json.loads(out)
    for item, src in zip(payload["basis"], ["exp(2*t)", "t*exp(2*t)", "t^2*exp(2*t)"]):
        jsonschema.validate(item, POLYEXP_SCHEMA)
        f, base = polyexp_from_json(item)
        assert f == parse_expression(src, base)


def test_exit_codes():
    code, _, err = invoke(["decompose", "--domain", "seq", "n*2^n"])
    assert code == 1 and "NotInvariantError" in err
    code, _, err = invoke(["solve", "y[n+2] = y[n+1] + y[n]", "--initial", "0,1"])
    assert code == 1 and "--roots" in err
    code, _, err = invoke(["kernel", "--domain", "seq", "--lambda", "0", "--m", "2"])
    assert code == 1
    code, _, err = invoke(["solve", "y[n+2] = y[n+1] + 2n"])
    assert code == 2 and "byte 19" in err and "hint" in err
    code, _, _ = invoke(["solve", "y'' = 1", "--domain", "seq"])
    assert code == 2
    with pytest.raises(SystemExit) as info:
        invoke(["frobnicate"])
    assert info.value.code == 2


def test_verify_command():
    code, out, _ = invoke(["verify", "y'' - 3*y' + 2*y = exp(t)", "--candidate=-t*exp(t)"])
    assert code == 0 and "residual_verified: true" in out
    code, out, _ = invoke(["verify", "y' - y = exp(t)", "--candidate", "exp(t)"])
    assert code == 1 and "residual_verified: false" in out


def test_stdin_input_and_closure():
    code, out, _ = invoke(["closure", "--domain", "ode"], stdin="t^2*exp(-t)\n\n")
    assert code == 0 and "closure dimension: 3" in out and "multiplicity 3" in out
    code, out, _ = invoke(["solve"], stdin="y' = y + 1; roots=1\n")
    assert code == 0 and "particular: -1" in out


def test_every_printed_solution_is_verified():
    code, out, _ = invoke(["solve", "y'' + y = t*exp(i*t)", "--roots", "i,-i", "--initial", "1,0"])
    assert code == 0 and out.rstrip().endswith("residual_verified: true")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "invspace"] + KERNEL_ARGS, capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and proc.stdout == KERNEL_GOLDEN
