import contextlib
import io
import math

from bernoulli_minimax.cli import main


def ulps_apart(x: float, y: float, floor: float = 1.0) -> float:
    """Distance in last-place units, floored at the unit scale.

    The floor keeps the measure meaningful near zeros of the compared
    expressions, where result-relative ulps blow up for any evaluation.
    """
    return abs(x - y) / math.ulp(max(abs(x), abs(y), floor))


def run_cli(argv: list[str]) -> tuple[int, str, str]:
    """Run the CLI in-process, capturing exit code, stdout, stderr."""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def text_value(stdout: str, key: str) -> str:
    """Value of a `key: value` line in text-format CLI output."""
    for line in stdout.splitlines():
        if line.startswith(key + ":"):
            return line.split(":", 1)[1].strip()
    raise AssertionError(f"key {key!r} not found in output:\n{stdout}")
