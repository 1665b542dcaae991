"""Abstract syntax and static analysis for Boolean equation systems.

A system is a finite sequence of least (mu) / greatest (nu) fixed-point
equations over proposition variables, with right-hand sides in positive
form.  Besides the binary connectives, the syntax carries n-ary
conjunction/disjunction over variable sets so that systems in standard
recursive form (SRF) can be represented directly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import BesError, WellFormednessError


class Fixpoint(enum.Enum):
    MU = "mu"
    NU = "nu"


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class AndSet:
    members: frozenset[str]

    def __post_init__(self):
        if not self.members:
            raise ValueError("n-ary conjunction needs at least one member")


@dataclass(frozen=True)
class OrSet:
    members: frozenset[str]

    def __post_init__(self):
        if not self.members:
            raise ValueError("n-ary disjunction needs at least one member")


Formula = Union[Const, Var, And, Or, AndSet, OrSet]

TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True)
class Equation:
    sign: Fixpoint
    lhs: str
    rhs: Formula


@dataclass(frozen=True)
class EquationSystem:
    equations: tuple[Equation, ...]

    def __post_init__(self):
        object.__setattr__(self, "equations", tuple(self.equations))
        seen = set()
        for eq in self.equations:
            if eq.lhs in seen:
                raise WellFormednessError(
                    f"variable {eq.lhs} is bound by more than one equation"
                )
            seen.add(eq.lhs)

    def __iter__(self) -> Iterator[Equation]:
        return iter(self.equations)

    def __len__(self) -> int:
        return len(self.equations)


def system(*equations: Equation) -> EquationSystem:
    return EquationSystem(tuple(equations))


# ---------------------------------------------------------------------------
# Canonical text form


def _prec(f: Formula) -> int:
    # disjunction binds loosest, conjunction tighter, everything else atomic
    if isinstance(f, Or):
        return 1
    if isinstance(f, And):
        return 2
    return 3


def format_formula(f: Formula) -> str:
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Var):
        return f.name
    if isinstance(f, AndSet):
        return "AND{" + ",".join(sorted(f.members)) + "}"
    if isinstance(f, OrSet):
        return "OR{" + ",".join(sorted(f.members)) + "}"
    if isinstance(f, And):
        left = format_formula(f.left)
        right = format_formula(f.right)
        if _prec(f.left) < 2:
            left = f"({left})"
        if _prec(f.right) <= 2:
            right = f"({right})"
        return f"{left} && {right}"
    if isinstance(f, Or):
        left = format_formula(f.left)
        right = format_formula(f.right)
        if _prec(f.left) == 2:
            left = f"({left})"
        if _prec(f.right) <= 2:
            right = f"({right})"
        return f"{left} || {right}"
    raise TypeError(f"not a formula: {f!r}")


def print_bes(es: EquationSystem) -> str:
    lines = [
        f"{eq.sign.value} {eq.lhs} = {format_formula(eq.rhs)};" for eq in es
    ]
    return "".join(line + "\n" for line in lines)


# ---------------------------------------------------------------------------
# Total order on constants, variables and formulae: true before false before
# everything else; non-constants compared by their canonical text.


def formula_key(f: Formula):
    if isinstance(f, Const):
        return (0, 0 if f.value else 1, "")
    return (1, 0, format_formula(f))


def least_variable(es: EquationSystem) -> str:
    if not es.equations:
        raise BesError("empty equation system has no bound variables")
    return es.equations[0].lhs


# ---------------------------------------------------------------------------
# Static analysis


def bnd(es: EquationSystem) -> set[str]:
    return {eq.lhs for eq in es}


def occ(item: Union[EquationSystem, Formula]) -> set[str]:
    if isinstance(item, EquationSystem):
        result: set[str] = set()
        for eq in item:
            result |= occ(eq.rhs)
        return result
    f = item
    if isinstance(f, Const):
        return set()
    if isinstance(f, Var):
        return {f.name}
    if isinstance(f, (And, Or)):
        return occ(f.left) | occ(f.right)
    if isinstance(f, (AndSet, OrSet)):
        return set(f.members)
    raise TypeError(f"not a formula or system: {f!r}")


def is_closed(es: EquationSystem) -> bool:
    return occ(es) <= bnd(es)


def rank(es: EquationSystem, x: str) -> int:
    """Rank of a bound variable, by the alternation-counting recursion.

    Counts the sign changes seen while scanning left-to-right, starting
    from the greatest fixed point, until the equation for ``x`` is reached
    under a matching sign.
    """
    if x not in bnd(es):
        raise BesError(f"variable {x} is not bound")
    sigma = Fixpoint.NU
    r = 0
    for eq in es:
        while eq.sign != sigma:
            sigma = eq.sign
            r += 1
        if eq.lhs == x:
            return r
    raise AssertionError("unreachable: x checked to be bound")


def ranks(es: EquationSystem) -> dict[str, int]:
    return {eq.lhs: rank(es, eq.lhs) for eq in es}


def alternation_hierarchy(es: EquationSystem) -> int:
    if not es.equations:
        raise BesError("alternation hierarchy is undefined for the empty system")
    values = ranks(es).values()
    return max(values) - min(values)


def _formula_size(f: Formula) -> tuple[int, int]:
    """(leaf count, binary connective count) of a right-hand side."""
    if isinstance(f, (Const, Var)):
        return 1, 0
    if isinstance(f, (And, Or)):
        ll, lc = _formula_size(f.left)
        rl, rc = _formula_size(f.right)
        return ll + rl, lc + rc + 1
    if isinstance(f, (AndSet, OrSet)):
        n = len(f.members)
        return n, n - 1
    raise TypeError(f"not a formula: {f!r}")


def size(es: EquationSystem) -> int:
    """Equation count plus right-hand-side leaves and binary connectives."""
    total = len(es.equations)
    for eq in es:
        leaves, connectives = _formula_size(eq.rhs)
        total += leaves + connectives
    return total


def is_general_syntax(f: Formula) -> bool:
    if isinstance(f, (AndSet, OrSet)):
        return False
    if isinstance(f, (And, Or)):
        return is_general_syntax(f.left) and is_general_syntax(f.right)
    return True


def is_srf(es: EquationSystem) -> bool:
    return all(isinstance(eq.rhs, (Var, AndSet, OrSet)) for eq in es)
