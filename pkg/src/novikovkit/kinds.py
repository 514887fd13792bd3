"""Structure kinds a definition file can declare, with their checkers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .bialgebra import (
    PreLieBialgebra,
    PreNovikovBialgebra,
    check_pre_lie_bialgebra,
    check_pre_novikov_bialgebra,
)
from .checks import (
    DEFAULT_WITNESS_CAP,
    CheckReport,
    check_form,
    check_graded_form,
    check_jacobi,
    check_novikov,
    check_pre_lie,
    check_pre_lie_coalgebra,
    check_pre_novikov,
    check_pre_novikov_coalgebra,
    check_quadratic_pre_lie,
    check_quadratic_pre_novikov,
    check_quadratic_right_novikov,
    check_quasi_frobenius,
    check_right_novikov,
    check_right_novikov_co_dialgebra,
    check_right_novikov_coalgebra,
    check_right_novikov_dialgebra,
    check_symplectic,
    pre_lie_axioms,
    pre_novikov_axioms,
    run_axioms,
)
from .core import flip
from .workbench import WorkbenchFile, WorkbenchError
from .yangbaxter import pnybe_residual, s_equation_residual


@dataclass(frozen=True)
class Kind:
    name: str
    roles: tuple
    check: Callable
    summary: str


def _r_axioms(r):
    return [("r-symmetric", 0, lambda: flip(r) - r)]


def _pnybe(wb, cap, labels):
    lhd, rhd, r = wb.role("lhd"), wb.role("rhd"), wb.role("r").tensor
    axioms = pre_novikov_axioms(lhd, rhd) + _r_axioms(r) + [
        ("pnybe", 0, lambda: pnybe_residual(lhd, rhd, r))]
    return run_axioms(lhd.space.dim, axioms, cap, labels)


def _s_equation(wb, cap, labels):
    circ, r = wb.role("circ"), wb.role("r").tensor
    axioms = pre_lie_axioms(circ) + _r_axioms(r) + [
        ("s-equation", 0, lambda: s_equation_residual(circ, r))]
    return run_axioms(circ.space.dim, axioms, cap, labels)


def _graded(wb, cap, labels):
    return check_graded_form(wb.role("form"), wb.role("grading").degrees, cap=cap, labels=labels)


def _role_check(fn, *roles):
    def run(wb, cap, labels):
        return fn(*(wb.role(r) for r in roles), cap=cap, labels=labels)

    return run


def _bialgebra(wb, cap, labels):
    b = PreNovikovBialgebra(wb.role("lhd"), wb.role("rhd"), wb.role("alpha"), wb.role("beta"))
    return check_pre_novikov_bialgebra(b, cap, labels)


def _pre_lie_bialgebra(wb, cap, labels):
    return check_pre_lie_bialgebra(PreLieBialgebra(wb.role("circ"), wb.role("delta")), cap, labels)


def _nothing(wb, cap, labels):
    return CheckReport(labels=labels)


_K = [
    Kind("pre-lie", ("circ",), _role_check(check_pre_lie, "circ"), "pre-Lie algebra"),
    Kind("novikov", ("circ",), _role_check(check_novikov, "circ"), "Novikov algebra"),
    Kind("right-novikov", ("diamond",), _role_check(check_right_novikov, "diamond"),
         "right Novikov algebra"),
    Kind("right-novikov-dialgebra", ("dashv", "vdash"),
         _role_check(check_right_novikov_dialgebra, "dashv", "vdash"),
         "right Novikov dialgebra"),
    Kind("pre-novikov", ("lhd", "rhd"), _role_check(check_pre_novikov, "lhd", "rhd"),
         "pre-Novikov algebra"),
    Kind("lie", ("bracket",), _role_check(check_jacobi, "bracket"), "Lie algebra"),
    Kind("pre-novikov-coalgebra", ("alpha", "beta"),
         _role_check(check_pre_novikov_coalgebra, "alpha", "beta"), "pre-Novikov coalgebra"),
    Kind("right-novikov-coalgebra", ("Delta",),
         _role_check(check_right_novikov_coalgebra, "Delta"), "right Novikov coalgebra"),
    Kind("right-novikov-co-dialgebra", ("Delta_dashv", "Delta_vdash"),
         _role_check(check_right_novikov_co_dialgebra, "Delta_dashv", "Delta_vdash"),
         "right Novikov co-dialgebra"),
    Kind("pre-lie-coalgebra", ("delta",), _role_check(check_pre_lie_coalgebra, "delta"),
         "pre-Lie coalgebra"),
    Kind("quasi-frobenius", ("circ", "omega"),
         _role_check(check_quasi_frobenius, "circ", "omega"), "quasi-Frobenius Novikov algebra"),
    Kind("quadratic-pre-novikov", ("lhd", "rhd", "omega"),
         _role_check(check_quadratic_pre_novikov, "lhd", "rhd", "omega"),
         "quadratic pre-Novikov algebra"),
    Kind("quadratic-pre-lie", ("circ", "omega"),
         _role_check(check_quadratic_pre_lie, "circ", "omega"), "quadratic pre-Lie algebra"),
    Kind("quadratic-right-novikov", ("diamond", "form"),
         _role_check(check_quadratic_right_novikov, "diamond", "form"),
         "quadratic right Novikov algebra"),
    Kind("symplectic", ("bracket", "omega"),
         _role_check(check_symplectic, "bracket", "omega"), "Lie algebra with symplectic form"),
    Kind("skew-form", ("omega",), _role_check(check_form, "omega"),
         "nondegenerate skew-symmetric form"),
    Kind("symmetric-form", ("form",),
         lambda wb, cap, labels: check_form(wb.role("form"), "symmetric", cap, labels),
         "nondegenerate symmetric form"),
    Kind("graded-form", ("form", "grading"), _graded, "graded bilinear form"),
    Kind("pre-novikov-bialgebra", ("lhd", "rhd", "alpha", "beta"), _bialgebra,
         "pre-Novikov bialgebra"),
    Kind("pre-lie-bialgebra", ("circ", "delta"), _pre_lie_bialgebra, "pre-Lie bialgebra"),
    Kind("pnybe-solution", ("lhd", "rhd", "r"), _pnybe,
         "pre-Novikov algebra with a symmetric p-NYBE solution"),
    Kind("s-equation-solution", ("circ", "r"), _s_equation,
         "pre-Lie algebra with a symmetric S-equation solution"),
    Kind("tensor", ("r",), _nothing, "a 2-tensor, no identities"),
]

KINDS = {k.name: k for k in _K}


def get_kind(name: str) -> Kind:
    try:
        return KINDS[name]
    except KeyError:
        raise WorkbenchError(f"unknown structure kind {name!r}", "/kind") from None


def labels_for(wb: WorkbenchFile, roles) -> tuple | None:
    for role in roles:
        obj = wb.role(role)
        if hasattr(obj, "space"):
            return obj.space.labels
    return None


def validate(wb: WorkbenchFile, kind: str | None = None) -> Kind:
    """The declared (or requested) kind, after checking its roles are present
    and share one space."""
    k = get_kind(kind or wb.kind)
    missing = [r for r in k.roles if not wb.has(r)]
    if missing:
        raise WorkbenchError(f"kind {k.name!r} needs roles: {', '.join(missing)}")
    spaces = {wb.role(r).space for r in k.roles}
    if len(spaces) > 1:
        raise WorkbenchError(f"roles of kind {k.name!r} live on different spaces")
    return k


def check_file(wb: WorkbenchFile, kind: str | None = None,
               cap: int = DEFAULT_WITNESS_CAP) -> CheckReport:
    k = validate(wb, kind)
    return k.check(wb, cap, labels_for(wb, k.roles))
