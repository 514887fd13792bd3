"""Command line interface.

Exit status: 0 when every check passes (or a command succeeds), 1 when an
identity fails and witnesses are reported, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import corpus
from .affine import (
    GradedWindow,
    WindowRangeError,
    check_affine_pre_lie,
    check_affine_pre_lie_bialgebra,
    check_affine_pre_lie_coalgebra,
)
from .bialgebra import (
    PreLieBialgebra,
    PreNovikovBialgebra,
    build_pre_lie_bialgebra,
    check_pre_lie_bialgebra,
    check_pre_novikov_bialgebra,
)
from .checks import (
    DEFAULT_WITNESS_CAP,
    CheckReport,
    Witness,
    format_tensor,
    scalar_tensor,
)
from .constructions import (
    DegenerateFormError,
    PreconditionError,
    associated_novikov,
    compatible_pre_lie_from_symplectic,
    compatible_pre_novikov_from_qf,
    coproduct_from_form,
    induced_pre_lie,
    product_form,
)
from .core import DimensionError, Tensor, scalar
from .kinds import KINDS, check_file
from .workbench import (
    NamedTensor,
    WorkbenchError,
    WorkbenchFile,
    dumps,
    emit,
    load,
    to_dict,
    workbench_for,
)
from .yangbaxter import (
    BudgetExceeded,
    affine_s_equation_residual,
    coboundary_alpha_beta,
    lift_r_finite,
    lift_r_laurent,
    pnybe_residual,
    s_equation_residual,
    search_pnybe,
)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ------------------------------------------------------------------ inputs

def read_input(name: str) -> WorkbenchFile:
    """A definition file, or a bundled example when no such file exists."""
    if Path(name).exists():
        return load(name)
    stem = name[:-5] if name.endswith(".json") else name
    if stem in corpus.names():
        return corpus.load(stem)
    raise WorkbenchError(f"no such file or bundled example: {name}")


def gather(names) -> WorkbenchFile:
    """Merge the roles of several files; a role may appear twice only if equal."""
    merged = WorkbenchFile(kind="merged")
    for name in names:
        wb = read_input(name)
        for sname, space in wb.spaces.items():
            if merged.spaces.get(sname, space) != space:
                raise WorkbenchError(f"{name}: space {sname!r} differs from an earlier file")
            merged.spaces[sname] = space
        for group in ("operations", "cooperations", "forms", "gradings", "tensors"):
            target = getattr(merged, group)
            for role, obj in getattr(wb, group).items():
                if role in target and target[role] != obj:
                    raise WorkbenchError(f"{name}: role {role!r} conflicts with an earlier file")
                target[role] = obj
        if len(names) == 1:
            merged.kind = wb.kind
    return merged


def need(wb: WorkbenchFile, *roles):
    missing = [r for r in roles if not wb.has(r)]
    if missing:
        raise WorkbenchError(f"inputs lack the roles: {', '.join(missing)}")
    return [wb.role(r) for r in roles]


def _dialgebra(wb: WorkbenchFile):
    if wb.has("dashv") and wb.has("vdash"):
        return need(wb, "dashv", "vdash")
    (dia,) = need(wb, "diamond")
    return dia, dia


def _pre_novikov(wb: WorkbenchFile) -> PreNovikovBialgebra:
    return PreNovikovBialgebra(*need(wb, "lhd", "rhd", "alpha", "beta"))


# ----------------------------------------------------------------- reports

class Outcome:
    def __init__(self, report: CheckReport | None = None, result: WorkbenchFile | None = None,
                 extra: dict | None = None, success: bool | None = None):
        self.report = report if report is not None else CheckReport()
        self.result = result
        self.extra = extra or {}
        self._success = success

    @property
    def passed(self) -> bool:
        return self.report.passed if self._success is None else self._success


def report_dict(command: str, inputs, outcome: Outcome, timings: dict) -> dict:
    rep = outcome.report.to_dict()
    out = {
        "command": command,
        "inputs": list(inputs),
        "passed": outcome.passed,
        "witnesses": rep["witnesses"],
        "axiom_catalog": rep["axiom_catalog"],
        "notes": rep["notes"],
        "timings": timings,
    }
    out.update(outcome.extra)
    if outcome.result is not None:
        out["result"] = to_dict(outcome.result)
    return out


def describe(wb: WorkbenchFile) -> list[str]:
    """Human-readable tables of a definition file."""
    lines = []
    for role, op in wb.operations.items():
        labels = op.space.labels
        lines.append(f"{role} on {op.space.name}:")
        if not op.table:
            lines.append("  (all products zero)")
        for (i, j), v in op.table.items():
            lines.append(f"  {labels[i]} · {labels[j]} = {format_tensor(v, labels)}")
    for role, c in wb.cooperations.items():
        labels = c.space.labels
        lines.append(f"{role} on {c.space.name}:")
        if not c.table:
            lines.append("  (zero)")
        for i, v in c.table.items():
            lines.append(f"  {role}({labels[i]}) = {format_tensor(v, labels)}")
    for role, f in wb.forms.items():
        shift = "" if f.grading_shift is None else f" (grading shift {f.grading_shift})"
        lines.append(f"{role} on {f.space.name}{shift}:")
        lines += ["  [" + " ".join(str(c) for c in row) + "]" for row in f.matrix]
    for role, g in wb.gradings.items():
        lines.append(f"{role} on {g.space.name}: "
                     + ", ".join(f"{l}:{d}" for l, d in zip(g.space.labels, g.degrees)))
    for role, t in wb.tensors.items():
        lines.append(f"{role} on {t.space.name}: {format_tensor(t.tensor, t.space.labels)}")
    return lines


def render_human(report: dict, outcome: Outcome) -> str:
    head = f"{report['command']}: {'PASS' if report['passed'] else 'FAIL'}"
    lines = [head]
    for w in report["witnesses"]:
        args = ", ".join(w["args"])
        lines.append(f"  {w['axiom']} at ({args}): residual {w['residual']}")
        if w.get("statement"):
            lines.append(f"      {w['statement']}")
    if not report["passed"]:
        lines += [f"  note: {note}" for note in report["notes"]]
    for key in sorted(outcome.extra):
        value = outcome.extra[key]
        if isinstance(value, list):
            lines.append(f"  {key}:")
            lines += [f"    {v}" for v in value]
        else:
            lines.append(f"  {key}: {value}")
    if outcome.result is not None:
        lines.append(f"  result ({outcome.result.kind}):")
        lines += ["    " + l for l in describe(outcome.result)]
    for key, value in sorted(report["timings"].items()):
        lines.append(f"  time {key}: {value}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- commands

def _window(args) -> GradedWindow:
    return GradedWindow.parse(args.window) if args.window else GradedWindow.default()


def cmd_check(args) -> Outcome:
    wb = gather(args.files)
    kind = args.kind or (wb.kind if wb.kind != "merged" else None)
    if kind is None:
        raise UsageError("several files given: pass --kind")
    return Outcome(check_file(wb, kind, args.cap), extra={"kind": kind})


def _checked(report: CheckReport, result: WorkbenchFile) -> Outcome:
    return Outcome(report, result)


def cmd_construct(args) -> Outcome:
    wb = gather(args.files)
    what = args.construction
    if what == "assoc-novikov":
        lhd, rhd = need(wb, "lhd", "rhd")
        out = workbench_for("novikov", circ=associated_novikov(lhd, rhd))
    elif what == "induced-prelie":
        lhd, rhd = need(wb, "lhd", "rhd")
        dashv, vdash = _dialgebra(wb)
        out = workbench_for("pre-lie", circ=induced_pre_lie(lhd, rhd, dashv, vdash).product)
    elif what == "coproduct-from-form":
        dia, form = need(wb, "diamond", "form")
        out = workbench_for("right-novikov-coalgebra", Delta=coproduct_from_form(dia, form))
    elif what == "product-form":
        omega, form = need(wb, "omega", "form")
        out = workbench_for("skew-form", omega=product_form(omega, form))
    elif what == "compatible-pre-novikov":
        (omega,) = need(wb, "omega")
        circ = wb.role("circ") if wb.has("circ") else associated_novikov(*need(wb, "lhd", "rhd"))
        lhd, rhd = compatible_pre_novikov_from_qf(circ, omega)
        out = workbench_for("quadratic-pre-novikov", lhd=lhd, rhd=rhd, omega=omega)
    elif what == "compatible-pre-lie":
        bracket, omega = need(wb, "bracket", "omega")
        out = workbench_for("quadratic-pre-lie",
                            circ=compatible_pre_lie_from_symplectic(bracket, omega), omega=omega)
    else:  # argparse restricts the choices
        raise UsageError(f"unknown construction {what!r}")
    return _checked(check_file(out, cap=args.cap), out)


def cmd_affinize(args) -> Outcome:
    wb = gather([args.file])
    window = _window(args)
    if args.mode == "algebra":
        lhd, rhd = need(wb, "lhd", "rhd")
        rep = check_affine_pre_lie(lhd, rhd, window, args.cap, lhd.space.labels)
    elif args.mode == "coalgebra":
        alpha, beta = need(wb, "alpha", "beta")
        rep = check_affine_pre_lie_coalgebra(alpha, beta, window, args.cap, alpha.space.labels)
    else:
        b = _pre_novikov(wb)
        rep = check_affine_pre_lie_bialgebra(b, window, args.cap, b.space.labels)
    return Outcome(rep, extra={"window": f"{window.lo}:{window.hi}", "mode": args.mode})


def cmd_bialgebra(args) -> Outcome:
    wb = gather(args.files)
    if args.action == "build":
        b = _pre_novikov(wb)
        dia, form = need(wb, "diamond", "form")
        plb = build_pre_lie_bialgebra(b, dia, form)
        out = workbench_for("pre-lie-bialgebra", circ=plb.circ, delta=plb.delta)
        return _checked(check_pre_lie_bialgebra(plb, args.cap, plb.space.labels), out)
    if wb.has("alpha"):
        b = _pre_novikov(wb)
        return Outcome(check_pre_novikov_bialgebra(b, args.cap, b.space.labels),
                       extra={"kind": "pre-novikov-bialgebra"})
    plb = PreLieBialgebra(*need(wb, "circ", "delta"))
    return Outcome(check_pre_lie_bialgebra(plb, args.cap, plb.space.labels),
                   extra={"kind": "pre-lie-bialgebra"})


def _residual_report(axiom: str, residual: Tensor, labels) -> CheckReport:
    rep = CheckReport(axiom_catalog=[axiom], labels=labels)
    if residual:
        rep.witnesses.append(Witness(axiom, (), residual))
    return rep


def cmd_ybe(args) -> Outcome:
    wb = gather(args.files)
    if args.action == "residual":
        (r,) = need(wb, "r")
        labels = r.space.labels
        if wb.has("lhd"):
            lhd, rhd = need(wb, "lhd", "rhd")
            res, axiom = pnybe_residual(lhd, rhd, r.tensor), "pnybe"
        else:
            (circ,) = need(wb, "circ")
            res, axiom = s_equation_residual(circ, r.tensor), "s-equation"
        return Outcome(_residual_report(axiom, res, labels),
                       extra={"residual": format_tensor(res, labels), "equation": axiom})
    if args.action == "lift":
        lhd, rhd, r = need(wb, "lhd", "rhd", "r")
        if wb.has("diamond") and wb.has("form") and not args.window:
            dia, form = need(wb, "diamond", "form")
            product = induced_pre_lie(lhd, rhd, dia, dia)
            lifted = lift_r_finite(r.tensor, form)
            res = s_equation_residual(product.product, lifted)
            out = workbench_for("s-equation-solution", circ=product.product,
                                r=NamedTensor(product.space, lifted))
            return Outcome(_residual_report("s-equation", res, product.space.labels), out,
                           extra={"residual": format_tensor(res, product.space.labels)})
        window = _window(args)
        res = affine_s_equation_residual(lhd, rhd, r.tensor, window)
        labels = lhd.space.labels
        lifted = lift_r_laurent(r.tensor, window)
        return Outcome(_residual_report("s-equation", res, labels),
                       extra={"window": f"{window.lo}:{window.hi}",
                              "lift": format_tensor(lifted, labels),
                              "residual": format_tensor(res, labels)})
    if args.action == "coboundary":
        lhd, rhd, r = need(wb, "lhd", "rhd", "r")
        alpha, beta = coboundary_alpha_beta(lhd, rhd, r.tensor)
        out = workbench_for("pre-novikov-bialgebra", lhd=lhd, rhd=rhd, alpha=alpha, beta=beta)
        return _checked(check_file(out, cap=args.cap), out)
    lhd, rhd = need(wb, "lhd", "rhd")
    labels = lhd.space.labels
    coeffs = parse_coefficients(args.coeffs)
    support = None
    if args.support:
        try:
            support = [lhd.space.index(l) for l in args.support.split(",") if l]
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    found = search_pnybe(lhd, rhd, coeffs, support, args.budget)
    certified = [s for s in found if not pnybe_residual(lhd, rhd, s.tensor)]
    return Outcome(success=len(certified) == len(found),
                   extra={"solutions": [format_tensor(s.tensor, labels) for s in found],
                          "count": len(found)})


def parse_coefficients(text: str) -> list:
    body = text.strip().strip("{}")
    try:
        return [scalar(p) for p in body.split(",") if p.strip()]
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad coefficient set {text!r}: {exc}") from None


def cmd_examples(args) -> Outcome:
    if args.action == "list":
        entries = [f"{n}: {corpus.load(n).kind}" for n in corpus.names()]
        return Outcome(extra={"examples": entries}, success=True)
    if args.action == "show":
        if not args.name:
            raise UsageError("examples show needs a name")
        try:
            wb = corpus.load(args.name)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        return Outcome(result=wb, success=True)
    results = corpus.verify_all()
    rep = CheckReport()
    for v in results:
        rep = rep.merge(v.report)
    lines = [f"{'PASS' if v.passed else 'FAIL'} {v.name}" for v in results]
    return Outcome(rep, extra={"checks": lines})


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["human", "json"], default=argparse.SUPPRESS)
    common.add_argument("--timings", action="store_true", default=argparse.SUPPRESS,
                        help="include wall-clock timings in the report")
    common.add_argument("--cap", type=int, default=argparse.SUPPRESS,
                        help="witnesses kept per identity")
    common.add_argument("--output", default=argparse.SUPPRESS,
                        help="write a constructed structure to this file")

    p = _Parser(prog="novikovkit", parents=[common],
                description="Exact checks and constructions for pre-Novikov, Novikov and "
                            "pre-Lie (co/bi)algebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", parents=[common], help="check a file against its kind")
    c.add_argument("files", nargs="+")
    c.add_argument("--kind", choices=sorted(KINDS))
    c.set_defaults(run=cmd_check)

    c = sub.add_parser("construct", parents=[common], help="run a construction")
    c.add_argument("construction", choices=["assoc-novikov", "induced-prelie",
                                            "coproduct-from-form", "product-form",
                                            "compatible-pre-novikov", "compatible-pre-lie"])
    c.add_argument("files", nargs="+")
    c.set_defaults(run=cmd_construct)

    c = sub.add_parser("affinize", parents=[common], help="check the affine structure")
    c.add_argument("file")
    c.add_argument("--window", help="exponent range LO:HI")
    c.add_argument("--mode", choices=["algebra", "coalgebra", "bialgebra"], default="algebra")
    c.set_defaults(run=cmd_affinize)

    c = sub.add_parser("bialgebra", parents=[common], help="build or check bialgebras")
    c.add_argument("action", choices=["build", "check"])
    c.add_argument("files", nargs="+")
    c.set_defaults(run=cmd_bialgebra)

    c = sub.add_parser("ybe", parents=[common], help="Yang-Baxter type equations")
    c.add_argument("action", choices=["residual", "lift", "search", "coboundary"])
    c.add_argument("files", nargs="+")
    c.add_argument("--coeffs", default="-1,0,1", help="coefficient set, e.g. -1,0,1")
    c.add_argument("--support", help="comma-separated basis labels")
    c.add_argument("--budget", type=int, default=100_000)
    c.add_argument("--window", help="exponent range LO:HI for the Laurent lift")
    c.set_defaults(run=cmd_ybe)

    c = sub.add_parser("examples", parents=[common], help="bundled examples")
    c.add_argument("action", choices=["list", "show", "verify-all"])
    c.add_argument("name", nargs="?")
    c.set_defaults(run=cmd_examples)
    return p


def _normalize(argv):
    """Join ``--coeffs -1,0,1`` and ``--window -4:4`` so that a leading minus
    is not read as a flag."""
    out, it = [], iter(argv)
    for tok in it:
        if tok in ("--coeffs", "--window"):
            out.append(f"{tok}={next(it, '')}")
        else:
            out.append(tok)
    return out


def run_command(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(_normalize(argv))
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    fmt = getattr(args, "format", "human")
    cap = getattr(args, "cap", DEFAULT_WITNESS_CAP)
    args.cap = cap
    want_timings = getattr(args, "timings", False)
    command = " ".join([args.command] + [v for v in (getattr(args, "construction", None),
                                                     getattr(args, "action", None)) if v])
    inputs = list(getattr(args, "files", None) or
                  ([args.file] if getattr(args, "file", None) else []))
    start = time.perf_counter()
    try:
        outcome = args.run(args)
    except PreconditionError as exc:
        outcome = Outcome(exc.report if exc.report is not None else CheckReport(), extra={"error": str(exc)})
    except DegenerateFormError as exc:
        rep = CheckReport(axiom_catalog=["form-nondegenerate"])
        rep.witnesses.append(Witness("form-nondegenerate", (), scalar_tensor(1)))
        outcome = Outcome(rep, extra={"error": str(exc)})
    except (UsageError, WorkbenchError, WindowRangeError, BudgetExceeded,
            DimensionError, ValueError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    timings = {"total_seconds": round(time.perf_counter() - start, 3)} if want_timings else {}
    report = report_dict(command, inputs, outcome, timings)
    if outcome.result is not None and getattr(args, "output", None):
        Path(args.output).write_text(emit(outcome.result), encoding="utf-8")
    stdout.write(dumps(report) if fmt == "json" else render_human(report, outcome))
    return EXIT_PASS if outcome.passed else EXIT_FAIL


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))

