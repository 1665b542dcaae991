"""Built-in example systems used by the CLI and the test suite."""

from __future__ import annotations

from .errors import BesError
from .parse import parse_bes
from .syntax import EquationSystem

FIXTURE_TEXTS: dict[str, str] = {
    # Mutual exclusion between two readers and a writer: on some path a
    # reader can infinitely often start reading.  All variables are true.
    "mutex": (
        "nu X_s0 = Y_s0;\n"
        "nu X_s1 = Y_s1;\n"
        "nu X_s2 = Y_s2;\n"
        "nu X_s3 = Y_s3;\n"
        "mu Y_s0 = X_s1 || Y_s1;\n"
        "mu Y_s1 = X_s2 || Y_s0;\n"
        "mu Y_s2 = Y_s1;\n"
        "mu Y_s3 = Y_s0;\n"
    ),
    # Unreliable-channel model checking problem; mixed right-hand sides,
    # minimises from 12 graph nodes to 7.  All variables are true.
    "paper-application": (
        "nu X_s0 = Y_s0;\n"
        "nu X_s1 = Y_s1;\n"
        "nu X_s2 = Y_s2;\n"
        "mu Y_s0 = (X_s1 && Z_s0) || Y_s1;\n"
        "mu Y_s1 = (X_s0 && Z_s1) || Y_s0;\n"
        "mu Y_s2 = true;\n"
        "nu Z_s0 = Z_s1;\n"
        "nu Z_s1 = Z_s2;\n"
        "nu Z_s2 = Z_s1;\n"
    ),
    # Four equations whose graph shares the conjunction X && Y between the
    # equations for X and Y.  All variables are false.
    "example-structure-graph": (
        "mu X = (X && Y) || Z;\n"
        "nu Y = W || (X && Y);\n"
        "mu Z = Z;\n"
        "mu W = Z || (Z || W);\n"
    ),
}


def fixture_names() -> list[str]:
    return sorted(FIXTURE_TEXTS)


def fixture_text(name: str) -> str:
    try:
        return FIXTURE_TEXTS[name]
    except KeyError:
        raise BesError(
            f"unknown fixture {name!r}; available: {', '.join(fixture_names())}"
        )


def fixture(name: str) -> EquationSystem:
    return parse_bes(fixture_text(name))
