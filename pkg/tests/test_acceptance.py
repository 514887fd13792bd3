"""Acceptance criteria 1-7, with exact arithmetic throughout.

Run directly (``python tests/test_acceptance.py``) to get one PASS/FAIL line
per criterion, or through pytest, where each criterion is one test and the
same line is printed.
"""

from __future__ import annotations

import random
import sys
from itertools import product
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import (  # noqa: E402
    Dense,
    dense_coop,
    dense_op,
    dense_tensor2,
    lfd_oracle,
    plb_oracle,
    random_coop,
    random_op,
    random_pre_novikov_instances,
    random_tensor,
    slot_oracle,
    space,
)
from novikovkit import corpus  # noqa: E402
from novikovkit.affine import (  # noqa: E402
    GradedWindow,
    check_affine_pre_lie,
    check_affine_pre_lie_bialgebra,
    check_affine_pre_lie_coalgebra,
    recover_all_bialgebra_residuals,
    recover_pre_novikov_coalgebra_residuals,
    recover_pre_novikov_residuals,
    recovered_axioms,
)
from novikovkit.bialgebra import (  # noqa: E402
    PRE_LIE_BIALGEBRA_CONDITIONS,
    PRE_NOVIKOV_BIALGEBRA_CONDITIONS,
    PreLieBialgebra,
    PreNovikovBialgebra,
    build_pre_lie_bialgebra,
    check_pre_lie_bialgebra,
    check_pre_novikov_bialgebra,
    condition_residual,
)
from novikovkit.checks import (  # noqa: E402
    check_novikov,
    check_pre_lie,
    check_pre_lie_coalgebra,
    check_pre_novikov,
    check_pre_novikov_coalgebra,
    check_quadratic_right_novikov,
    check_right_novikov,
    check_right_novikov_co_dialgebra,
    check_right_novikov_coalgebra,
    check_right_novikov_dialgebra,
)
from novikovkit.constructions import associated_novikov, induced_pre_lie  # noqa: E402
from novikovkit.core import (  # noqa: E402
    BasisSpace,
    BilinearOp,
    CoOp,
    FormDef,
    Tensor,
    dualize_coop,
    slot_product,
)
from novikovkit.yangbaxter import (  # noqa: E402
    affine_s_equation_residual,
    coboundary_alpha_beta,
    coboundary_delta,
    lift_r_finite,
    pnybe_residual,
    s_equation_residual,
    search_pnybe,
)

UNCAPPED = 10**9
FORWARD_WINDOW = GradedWindow(-8, 8)
CONVERSE_WINDOW = GradedWindow(-3, 3)
PERTURBATIONS = 50


# ------------------------------------------------- reference data, by label

def _op(sp: BasisSpace, rows: dict) -> BilinearOp:
    """rows: {"a b": {"c": coeff}} with basis labels."""
    table = {}
    for key, val in rows.items():
        i, j = (sp.index(l) for l in key.split())
        table[(i, j)] = Tensor({(sp.index(l),): c for l, c in val.items()}, 1)
    return BilinearOp(sp, table)


def _coop(sp: BasisSpace, rows: dict) -> CoOp:
    table = {}
    for key, val in rows.items():
        table[sp.index(key)] = Tensor(
            {tuple(sp.index(l) for l in k.split()): c for k, c in val.items()}, 2)
    return CoOp(sp, table)


def _t2(sp: BasisSpace, terms: dict) -> Tensor:
    return Tensor({tuple(sp.index(l) for l in k.split()): c for k, c in terms.items()}, 2)


A2 = BasisSpace("A", ("e1", "e2"))
EX1_LHD = _op(A2, {"e1 e1": {"e1": 1}, "e1 e2": {"e2": 1}, "e2 e1": {"e2": 1}})
EX1_RHD = BilinearOp(A2)
EX1_ALPHA = _coop(A2, {"e1": {"e2 e2": 1}})
EX1_BETA = _coop(A2, {"e1": {"e2 e2": -1}})

C2 = BasisSpace("C", ("x", "y"))
QEX_DIAMOND = _op(C2, {"x y": {"x": -2}, "y x": {"x": 1}, "y y": {"y": 1}})
QEX_FORM = FormDef(C2, ((0, 1), (1, 0)))

A4 = BasisSpace("A", ("e1", "e2", "e3", "e4"))
FOUR_LHD = _op(A4, {"e1 e1": {"e1": 1}, "e1 e2": {"e2": 1}, "e2 e1": {"e2": 1},
                    "e1 e3": {"e3": 1}, "e2 e4": {"e3": 1}, "e3 e1": {"e3": 1},
                    "e4 e2": {"e3": 1}, "e1 e4": {"e4": 1}, "e4 e1": {"e4": 1}})
FOUR_RHD = _op(A4, {"e1 e3": {"e3": -2}, "e2 e4": {"e3": -2}, "e1 e4": {"e4": -2}})
FOUR_R = _t2(A4, {"e2 e3": 1, "e3 e2": 1})

AC = BasisSpace("A⊗C", ("e1⊗x", "e1⊗y", "e2⊗x", "e2⊗y"))
GOLDEN_CIRC = _op(AC, {
    "e1⊗y e1⊗y": {"e1⊗y": -1},
    "e1⊗x e1⊗y": {"e1⊗x": -1},
    "e1⊗x e2⊗y": {"e2⊗x": -1},
    "e2⊗x e1⊗y": {"e2⊗x": -1},
    "e1⊗y e1⊗x": {"e1⊗x": 2},
    "e1⊗y e2⊗x": {"e2⊗x": 2},
    "e2⊗y e1⊗x": {"e2⊗x": 2},
    "e1⊗y e2⊗y": {"e2⊗y": -1},
    "e2⊗y e1⊗y": {"e2⊗y": -1},
})
GOLDEN_DELTA = _coop(AC, {
    "e1⊗x": {"e2⊗x e2⊗x": -2},
    "e1⊗y": {"e2⊗x e2⊗y": 1, "e2⊗y e2⊗x": 1},
})


def _lift_space() -> BasisSpace:
    return BasisSpace("A⊗C", tuple(f"{a}⊗{c}" for a in A4.labels for c in C2.labels))


GOLDEN_R_TILDE = _t2(_lift_space(), {"e2⊗x e3⊗y": 1, "e3⊗x e2⊗y": 1,
                                     "e2⊗y e3⊗x": 1, "e3⊗y e2⊗x": 1})


def ex1() -> PreNovikovBialgebra:
    return PreNovikovBialgebra(EX1_LHD, EX1_RHD, EX1_ALPHA, EX1_BETA)


def _zero_report(report, what: str, failures: list):
    if not report.passed:
        failures.append(f"{what}: {sorted(report.failed_axioms())}")


# ------------------------------------------------------------ criteria

def criterion_1() -> list:
    """Corpus golden checks."""
    f = []
    b = ex1()
    _zero_report(check_pre_novikov(b.lhd, b.rhd), "ex1 pre-Novikov", f)
    _zero_report(check_pre_novikov_coalgebra(b.alpha, b.beta), "ex1 coalgebra", f)
    _zero_report(check_pre_novikov_bialgebra(b), "ex1 bialgebra", f)
    st = b.structure()
    for cid, cond in PRE_NOVIKOV_BIALGEBRA_CONDITIONS.items():
        for x, y in product(range(2), repeat=2):
            if condition_residual(cond, st, x, y):
                f.append(f"ex1 {cid} residual at ({x}, {y})")
    _zero_report(check_quadratic_right_novikov(QEX_DIAMOND, QEX_FORM), "quadratic-ex", f)
    _zero_report(check_pre_novikov(FOUR_LHD, FOUR_RHD), "4-dim pre-Novikov", f)
    # the bundled files hold the same structures
    e = corpus.load("ex1")
    if (e.role("lhd"), e.role("rhd"), e.role("alpha"), e.role("beta")) != \
            (EX1_LHD, EX1_RHD, EX1_ALPHA, EX1_BETA):
        f.append("bundled ex1 differs from the reference tables")
    q = corpus.load("quadratic-ex")
    if (q.role("diamond"), q.role("form").matrix) != (QEX_DIAMOND, QEX_FORM.matrix):
        f.append("bundled quadratic-ex differs")
    four = corpus.load("4dim")
    if (four.role("lhd"), four.role("rhd")) != (FOUR_LHD, FOUR_RHD):
        f.append("bundled 4dim differs")
    return f


def criterion_2() -> list:
    """Reproduction of the pre-Lie bialgebra on A⊗C."""
    f = []
    built = build_pre_lie_bialgebra(ex1(), QEX_DIAMOND, QEX_FORM)
    if built.circ.space.labels != AC.labels:
        f.append(f"basis {built.circ.space.labels}")
    if dict(built.circ.table) != dict(GOLDEN_CIRC.table):
        f.append("products differ from the reference table")
    if len(built.circ.table) != 9:
        f.append(f"{len(built.circ.table)} nonzero products, expected 9")
    if dict(built.delta.table) != dict(GOLDEN_DELTA.table):
        f.append("coproduct differs from the reference table")
    _zero_report(check_pre_lie_bialgebra(built), "built pre-Lie bialgebra", f)
    _zero_report(check_pre_lie_bialgebra(PreLieBialgebra(GOLDEN_CIRC, GOLDEN_DELTA)),
                 "reference pre-Lie bialgebra", f)
    return f


def criterion_3() -> list:
    """p-NYBE, finite lift and Laurent lift."""
    f = []
    if pnybe_residual(FOUR_LHD, FOUR_RHD, FOUR_R):
        f.append("p-NYBE residual nonzero")
    lifted = lift_r_finite(FOUR_R, QEX_FORM)
    if lifted != GOLDEN_R_TILDE:
        f.append(f"finite lift {lifted} differs from the reference")
    circ = induced_pre_lie(FOUR_LHD, FOUR_RHD, QEX_DIAMOND, QEX_DIAMOND).product
    if s_equation_residual(circ, lifted):
        f.append("S-equation residual of the finite lift nonzero")
    if affine_s_equation_residual(FOUR_LHD, FOUR_RHD, FOUR_R, GradedWindow(-4, 4)):
        f.append("Laurent lift has a nonzero windowed component")
    return f


def _bump_op(op: BilinearOp, i, j, k, d) -> BilinearOp:
    table = dict(op.table)
    table[(i, j)] = table.get((i, j), Tensor.zero(1)) + Tensor({(k,): d}, 1)
    return BilinearOp(op.space, {key: v for key, v in table.items() if v})


def _bump_coop(c: CoOp, i, j, k, d) -> CoOp:
    table = dict(c.table)
    table[i] = table.get(i, Tensor.zero(2)) + Tensor({(j, k): d}, 2)
    return CoOp(c.space, {key: v for key, v in table.items() if v})


def single_constant_perturbations(roles, seed: int, count: int):
    """Distinct perturbations of one structure constant of ex1 in the given roles."""
    sites = []
    for role in roles:
        for i, j, k in product(range(2), repeat=3):
            for d in (-2, -1, 1, 2):
                sites.append((role, i, j, k, d))
    rng = random.Random(seed)
    chosen = rng.sample(sites, count)
    out = []
    base = {"lhd": EX1_LHD, "rhd": EX1_RHD, "alpha": EX1_ALPHA, "beta": EX1_BETA}
    for role, i, j, k, d in chosen:
        parts = dict(base)
        bump = _bump_op if role in ("lhd", "rhd") else _bump_coop
        parts[role] = bump(parts[role], i, j, k, d)
        out.append(((role, i, j, k, d), PreNovikovBialgebra(**parts)))
    return out


def _witness_values(report) -> dict:
    out: dict = {}
    for w in report.witnesses:
        out.setdefault(w.axiom, {})[tuple(w.args)] = w.residual
    return out


def _compare(label, finite, affine_passed, recovered, f):
    """Finite checker and affine checker agree on PASS/FAIL, and the residuals
    recovered from the affine identities equal the finite ones."""
    if finite.passed != affine_passed:
        f.append(f"{label}: finite {finite.passed}, affine {affine_passed}")
    if finite.failed_axioms() != recovered_axioms(recovered):
        f.append(f"{label}: ids {sorted(finite.failed_axioms())} vs "
                 f"{sorted(recovered_axioms(recovered))}")
    if _witness_values(finite) != {k: v for k, v in recovered.items() if v}:
        f.append(f"{label}: recovered residual values differ")


def criterion_4() -> list:
    """Affinization equivalences: forward on ex1, converse by perturbation."""
    f = []
    b = ex1()
    if not check_affine_pre_lie(b.lhd, b.rhd, FORWARD_WINDOW).passed:
        f.append("forward algebra")
    if not check_affine_pre_lie_coalgebra(b.alpha, b.beta, FORWARD_WINDOW).passed:
        f.append("forward coalgebra")
    if not check_affine_pre_lie_bialgebra(b, FORWARD_WINDOW).passed:
        f.append("forward bialgebra")

    failing = {"algebra": 0, "coalgebra": 0, "bialgebra": 0}
    for site, p in single_constant_perturbations(("lhd", "rhd"), 1, PERTURBATIONS):
        fin = check_pre_novikov(p.lhd, p.rhd, cap=UNCAPPED)
        aff = check_affine_pre_lie(p.lhd, p.rhd, CONVERSE_WINDOW, cap=1)
        _compare(f"algebra {site}", fin, aff.passed,
                 recover_pre_novikov_residuals(p.lhd, p.rhd), f)
        failing["algebra"] += not fin.passed
    for site, p in single_constant_perturbations(("alpha", "beta"), 2, PERTURBATIONS):
        fin = check_pre_novikov_coalgebra(p.alpha, p.beta, cap=UNCAPPED)
        aff = check_affine_pre_lie_coalgebra(p.alpha, p.beta, CONVERSE_WINDOW, cap=1)
        _compare(f"coalgebra {site}", fin, aff.passed,
                 recover_pre_novikov_coalgebra_residuals(p.alpha, p.beta), f)
        failing["coalgebra"] += not fin.passed
    for site, p in single_constant_perturbations(("lhd", "rhd", "alpha", "beta"), 3,
                                                 PERTURBATIONS):
        fin = check_pre_novikov_bialgebra(p, cap=UNCAPPED)
        aff = check_affine_pre_lie_bialgebra(p, CONVERSE_WINDOW, cap=1)
        _compare(f"bialgebra {site}", fin, aff.passed, recover_all_bialgebra_residuals(p), f)
        failing["bialgebra"] += not fin.passed
    # the converse is only exercised if most perturbations actually break something
    for theorem, n in failing.items():
        if n < PERTURBATIONS // 2:
            f.append(f"{theorem}: only {n} failing perturbations")
    return f


def criterion_5() -> list:
    """Tensoring the coboundary bialgebra equals the coboundary of the lift."""
    alpha, beta = coboundary_alpha_beta(FOUR_LHD, FOUR_RHD, FOUR_R)
    cob = PreNovikovBialgebra(FOUR_LHD, FOUR_RHD, alpha, beta)
    plb = build_pre_lie_bialgebra(cob, QEX_DIAMOND, QEX_FORM)
    circ = induced_pre_lie(FOUR_LHD, FOUR_RHD, QEX_DIAMOND, QEX_DIAMOND).product
    other = coboundary_delta(circ, lift_r_finite(FOUR_R, QEX_FORM))
    f = []
    if plb.delta != other:
        f.append("coproducts differ")
    if plb.delta.is_zero():
        f.append("coproduct is zero, comparison is vacuous")
    return f


def _pre_novikov_bases():
    four = (FOUR_LHD, FOUR_RHD)
    double = corpus.load("ex1-double")
    return [(EX1_LHD, EX1_RHD), four, (double.role("lhd"), double.role("rhd"))]


def criterion_6() -> list:
    f = []
    # (i) pre-Novikov implies Novikov for the associated product
    instances = _pre_novikov_bases() + random_pre_novikov_instances(6, 100, _pre_novikov_bases())
    for n, (lhd, rhd) in enumerate(instances):
        if not check_pre_novikov(lhd, rhd).passed:
            f.append(f"instance {n} is not pre-Novikov")
        elif not check_novikov(associated_novikov(lhd, rhd)).passed:
            f.append(f"instance {n}: associated product not Novikov")
    # (ii) coalgebra identities hold exactly when the dual algebra identities do
    coops = []
    for name, wb in corpus.corpus().items():
        for role, c in wb.cooperations.items():
            coops.append((name, role, c))
    pairs = {}
    for name, role, c in coops:
        pairs.setdefault(name, {})[role] = c
    for name, roles in pairs.items():
        for role, c in roles.items():
            for fin, dual in (
                (check_pre_lie_coalgebra(c), check_pre_lie(dualize_coop(c))),
                (check_right_novikov_coalgebra(c), check_right_novikov(dualize_coop(c))),
            ):
                if fin.passed != dual.passed:
                    f.append(f"{name}/{role}: coalgebra {fin.passed}, dual {dual.passed}")
        if {"alpha", "beta"} <= set(roles):
            a, b = roles["alpha"], roles["beta"]
            if check_pre_novikov_coalgebra(a, b).passed != \
                    check_pre_novikov(dualize_coop(a), dualize_coop(b)).passed:
                f.append(f"{name}: pre-Novikov coalgebra vs dual")
    if not coops:
        f.append("no cooperations in the corpus")
    rng = random.Random(62)
    for n in range(100):
        sp = space(2)
        a, b = random_coop(rng, sp, 0.15), random_coop(rng, sp, 0.15)
        if check_pre_novikov_coalgebra(a, b).passed != \
                check_pre_novikov(dualize_coop(a), dualize_coop(b)).passed:
            f.append(f"random pair {n}: coalgebra vs dual disagree")
        if check_right_novikov_co_dialgebra(a, b).passed != \
                check_right_novikov_dialgebra(dualize_coop(a), dualize_coop(b)).passed:
            f.append(f"random pair {n}: co-dialgebra vs dual disagree")
    # (iii) induced product is pre-Lie for every passing input pair
    quad = corpus.load("quadratic-ex").role("diamond")
    dialgebras = [(quad, quad), (quad, BilinearOp(quad.space)), (BilinearOp(quad.space), quad)]
    positive = corpus.load("laurent-positive").role("diamond")
    dialgebras.append((positive, positive))
    pn = _pre_novikov_bases() + random_pre_novikov_instances(63, 50, _pre_novikov_bases())
    tried = 0
    for lhd, rhd in pn:
        for dashv, vdash in dialgebras:
            if lhd.space.dim * dashv.space.dim > 12:
                continue
            if not (check_pre_novikov(lhd, rhd).passed
                    and check_right_novikov_dialgebra(dashv, vdash).passed):
                continue
            tried += 1
            prod = induced_pre_lie(lhd, rhd, dashv, vdash).product
            if not check_pre_lie(prod).passed:
                f.append(f"induced product on pair {tried} is not pre-Lie")
    if tried < 60:
        f.append(f"only {tried} passing input pairs")
    # (iv) slot products and condition evaluators against brute force
    rng = random.Random(64)
    for n in range(100):
        dim = rng.choice((2, 3))
        sp = space(dim)
        op = random_op(rng, sp, 0.4)
        r, s = random_tensor(rng, dim, 2, 0.4), random_tensor(rng, dim, 2, 0.4)
        for slots in (("12", "13"), ("12", "23"), ("13", "23"), ("23", "13"), ("13", "12"),
                      ("23", "12")):
            if slot_product(op, r, s, slots) != slot_oracle(op.mul, r, s, slots, dim):
                f.append(f"slot product {slots} on input {n}")
        lhd, rhd = random_op(rng, sp, 0.3), random_op(rng, sp, 0.3)
        alpha, beta = random_coop(rng, sp, 0.2), random_coop(rng, sp, 0.2)
        bialg = PreNovikovBialgebra(lhd, rhd, alpha, beta)
        st = bialg.structure()
        d = Dense(dim, {"◁": dense_op(lhd), "▷": dense_op(rhd), "∘": dense_op(lhd + rhd)},
                  {"α": dense_coop(alpha), "β": dense_coop(beta)})
        for cid, cond in PRE_NOVIKOV_BIALGEBRA_CONDITIONS.items():
            for x, y in product(range(dim), repeat=2):
                if dense_tensor2(condition_residual(cond, st, x, y), dim) != \
                        lfd_oracle(d, cid, x, y):
                    f.append(f"{cid} evaluator on input {n} at ({x}, {y})")
        plb = PreLieBialgebra(lhd, alpha)
        st = plb.structure()
        d = Dense(dim, {"∘": dense_op(lhd)}, {"δ": dense_coop(alpha)})
        for cid, cond in PRE_LIE_BIALGEBRA_CONDITIONS.items():
            for x, y in product(range(dim), repeat=2):
                if dense_tensor2(condition_residual(cond, st, x, y), dim) != \
                        plb_oracle(d, cid, x, y):
                    f.append(f"{cid} evaluator on input {n} at ({x}, {y})")
    return f


def criterion_7() -> list:
    found = search_pnybe(FOUR_LHD, FOUR_RHD, [-1, 0, 1], support=[1, 2])
    tensors = {s.tensor for s in found}
    f = []
    for want in (Tensor.zero(2), FOUR_R):
        if want not in tensors:
            f.append(f"missing {want}")
    for s in found:
        if pnybe_residual(FOUR_LHD, FOUR_RHD, s.tensor):
            f.append(f"{s.tensor} does not solve the equation")
    return f


CRITERIA = {
    1: ("corpus golden checks", criterion_1),
    2: ("pre-Lie bialgebra on A⊗C reproduced", criterion_2),
    3: ("p-NYBE and S-equation lifts", criterion_3),
    4: ("affinization equivalences", criterion_4),
    5: ("coboundary commuting diagram", criterion_5),
    6: ("property suites", criterion_6),
    7: ("p-NYBE search", criterion_7),
}


def run(number: int) -> list:
    title, fn = CRITERIA[number]
    failures = fn()
    status = "PASS" if not failures else "FAIL"
    print(f"criterion {number} ({title}): {status}", flush=True)
    for line in failures[:20]:
        print(f"    {line}")
    return failures


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    assert run(number) == []


if __name__ == "__main__":
    results = [run(n) for n in sorted(CRITERIA)]
    sys.exit(0 if not any(results) else 1)
