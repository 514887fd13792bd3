"""Bundled worked examples and a routine that exercises every checker and
construction on them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .affine import (
    GradedWindow,
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
    AXIOMS,
    CheckReport,
    Witness,
    check_jacobi,
    check_novikov,
    check_pre_lie,
    check_pre_novikov,
    check_quadratic_pre_lie,
    check_quasi_frobenius,
    check_right_novikov_co_dialgebra,
    check_right_novikov_coalgebra,
    check_right_novikov_dialgebra,
    check_symplectic,
    quadratic_tensor_obstruction,
    scalar_tensor,
)
from .constructions import (
    associated_novikov,
    compatible_pre_lie_from_symplectic,
    compatible_pre_novikov_from_qf,
    coproduct_from_form,
    induced_pre_lie,
    product_form,
    sub_adjacent_lie,
)
from .core import Tensor, dualize_coop
from .kinds import check_file
from .workbench import NamedTensor, WorkbenchError, WorkbenchFile, parse, workbench_for
from .yangbaxter import (
    affine_s_equation_residual,
    coboundary_alpha_beta,
    coboundary_delta,
    lift_r_finite,
    search_pnybe,
)

# fast enough for every run of verify-all; the affine identities have
# bounded degree in the exponents, so this range already sees every identity
VERIFY_WINDOW = GradedWindow(-3, 3)


AXIOMS.update({
    "golden-product": "built product equals the stored table",
    "golden-coproduct": "built coproduct equals the stored table",
    "round-trip": "reconstructed structure equals the original",
    "commuting-diagram": "tensored coboundary equals coboundary of the lifted tensor",
    "search": "search result contains the expected solutions",
})


class CorpusError(RuntimeError):
    pass


def names() -> list[str]:
    root = resources.files(__package__) / "data"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def source(name: str) -> str:
    path = resources.files(__package__) / "data" / f"{name}.json"
    if not path.is_file():
        raise KeyError(f"no corpus entry named {name!r}")
    return path.read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def _load(name: str) -> WorkbenchFile:
    wb = parse(source(name))
    report = check_file(wb)
    if not report.passed:
        raise CorpusError(f"corpus entry {name!r} fails its {wb.kind} check: "
                          f"{sorted(report.failed_axioms())}")
    return wb


def load(name: str) -> WorkbenchFile:
    """A corpus entry, checked against its declared kind on first load."""
    return _load(name)


def corpus() -> dict[str, WorkbenchFile]:
    return {n: load(n) for n in names()}


@dataclass
class Verification:
    name: str
    report: CheckReport

    @property
    def passed(self) -> bool:
        return self.report.passed


def _equal(axiom: str, got, want) -> CheckReport:
    """A report with one witness when two structures differ."""
    rep = CheckReport(axiom_catalog=[axiom])
    if got != want:
        rep.witnesses.append(Witness(axiom, (), scalar_tensor(1)))
    return rep


def ex1_bialgebra() -> PreNovikovBialgebra:
    wb = load("ex1")
    return PreNovikovBialgebra(wb.role("lhd"), wb.role("rhd"), wb.role("alpha"), wb.role("beta"))


def verify_all() -> list[Verification]:
    """Declared-kind checks for every entry, then every construction run on
    the entries with its output checked."""
    out = [Verification(f"{n}: {wb.kind}", check_file(wb)) for n, wb in corpus().items()]

    ex1 = ex1_bialgebra()
    quad = load("quadratic-ex")
    dia, form = quad.role("diamond"), quad.role("form")
    golden = load("ex-pL-bialg1")
    four = load("4dim")
    l4, r4 = four.role("lhd"), four.role("rhd")
    r = load("4dim-r").role("r").tensor
    double = load("ex1-double")
    dl, dr, omega = double.role("lhd"), double.role("rhd"), double.role("omega")

    def add(name, report):
        out.append(Verification(name, report))

    circ = associated_novikov(ex1.lhd, ex1.rhd)
    add("ex1 associated Novikov", check_novikov(circ))
    add("ex1 sub-adjacent Lie", check_jacobi(sub_adjacent_lie(circ)))
    add("ex1 dual of (α, β) is pre-Novikov",
        check_pre_novikov(dualize_coop(ex1.alpha), dualize_coop(ex1.beta)))
    add("quadratic-ex as dialgebra (⋄, ⋄)", check_right_novikov_dialgebra(dia, dia))
    delta_c = coproduct_from_form(dia, form)
    add("quadratic-ex coproduct from form", check_right_novikov_coalgebra(delta_c))
    add("quadratic-ex co-dialgebra (Δ, Δ)", check_right_novikov_co_dialgebra(delta_c, delta_c))

    induced = induced_pre_lie(ex1.lhd, ex1.rhd, dia, dia)
    add("ex1 ⊗ quadratic-ex induced product is pre-Lie", check_pre_lie(induced.product))
    built = build_pre_lie_bialgebra(ex1, dia, form)
    add("ex1 ⊗ quadratic-ex pre-Lie bialgebra", check_pre_lie_bialgebra(built))
    add("built product matches ex-pL-bialg1", _equal("golden-product", built.circ,
                                                      golden.role("circ")))
    add("built coproduct matches ex-pL-bialg1", _equal("golden-coproduct", built.delta,
                                                        golden.role("delta")))

    add("ex1 affine pre-Lie", check_affine_pre_lie(ex1.lhd, ex1.rhd, VERIFY_WINDOW))
    add("ex1 affine pre-Lie coalgebra",
        check_affine_pre_lie_coalgebra(ex1.alpha, ex1.beta, VERIFY_WINDOW))
    add("ex1 affine pre-Lie bialgebra", check_affine_pre_lie_bialgebra(ex1, VERIFY_WINDOW))

    dcirc = associated_novikov(dl, dr)
    add("ex1-double quasi-Frobenius", check_quasi_frobenius(dcirc, omega))
    lhd2, rhd2 = compatible_pre_novikov_from_qf(dcirc, omega)
    add("ex1-double pre-Novikov recovered from (∘, ω)",
        _equal("round-trip", (lhd2, rhd2), (dl, dr)))
    dind = induced_pre_lie(dl, dr, dia, dia)
    omega_p = product_form(omega, form)
    add("ex1-double ⊗ quadratic-ex quadratic pre-Lie",
        check_quadratic_pre_lie(dind.product, omega_p))
    add("ex1-double ⊗ quadratic-ex obstruction",
        quadratic_tensor_obstruction(dl, dr, omega, dia, dia, form))
    bracket = sub_adjacent_lie(dind.product)
    add("ex1-double ⊗ quadratic-ex symplectic", check_symplectic(bracket, omega_p))
    recovered = compatible_pre_lie_from_symplectic(bracket, omega_p)
    add("pre-Lie product recovered from the symplectic form",
        _equal("round-trip", sub_adjacent_lie(recovered), bracket))

    add("4dim with r solves the p-NYBE",
        check_file(workbench_for("pnybe-solution", lhd=l4, rhd=r4,
                                 r=NamedTensor(l4.space, r))))
    ind4 = induced_pre_lie(l4, r4, dia, dia)
    lifted = lift_r_finite(r, form)
    add("lift of r to A⊗C solves the S-equation",
        check_file(workbench_for("s-equation-solution", circ=ind4.product,
                                 r=NamedTensor(ind4.space, lifted))))
    rep = CheckReport(axiom_catalog=["s-equation"])
    res = affine_s_equation_residual(l4, r4, r, VERIFY_WINDOW)
    if res:
        rep.witnesses.append(Witness("s-equation", (), res))
    add("Laurent lift of r solves the S-equation on the window", rep)
    alpha, beta = coboundary_alpha_beta(l4, r4, r)
    cob = PreNovikovBialgebra(l4, r4, alpha, beta)
    add("coboundary of r is a pre-Novikov bialgebra", check_pre_novikov_bialgebra(cob))
    plb = build_pre_lie_bialgebra(cob, dia, form)
    add("tensoring commutes with the coboundary",
        _equal("commuting-diagram", plb.delta, coboundary_delta(ind4.product, lifted)))
    found = {s.tensor for s in search_pnybe(l4, r4, [-1, 0, 1], support=[1, 2])}
    add("search finds 0 and r", _equal("search", {Tensor.zero(2), r} <= found, True))
    return out


def pre_novikov_bialgebra_of(wb: WorkbenchFile) -> PreNovikovBialgebra:
    try:
        return PreNovikovBialgebra(wb.role("lhd"), wb.role("rhd"),
                                   wb.role("alpha"), wb.role("beta"))
    except KeyError as exc:
        raise WorkbenchError(f"missing role {exc.args[0]!r} for a pre-Novikov bialgebra") from None


def pre_lie_bialgebra_of(wb: WorkbenchFile) -> PreLieBialgebra:
    return PreLieBialgebra(wb.role("circ"), wb.role("delta"))

