"""Yang-Baxter type equations, coboundary co-operations and lifts of solutions."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from typing import Callable, Sequence

from . import linalg
from .affine import GradedWindow, affine_mul, restrict_to_window
from .core import (
    BilinearOp,
    CoOp,
    DimensionError,
    FormDef,
    Tensor,
    flip,
    scalar,
    slot_product,
)


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class RTensor:
    tensor: Tensor

    def __post_init__(self):
        if self.tensor and self.tensor.arity != 2:
            raise DimensionError("r must be a 2-tensor")

    @property
    def symmetric(self) -> bool:
        return flip(self.tensor) == self.tensor


@dataclass(frozen=True)
class DualBasisPair:
    """``basis[p]`` and ``dual[p]`` are vectors with form(basis[p], dual[q]) = δ_pq."""

    basis: tuple
    dual: tuple


def _tensor(r) -> Tensor:
    return r.tensor if isinstance(r, RTensor) else r


def _mul_of(op) -> Callable:
    return op.mul if isinstance(op, BilinearOp) else op


def pnybe_residual(lhd: BilinearOp, rhd: BilinearOp, r) -> Tensor:
    """r₁₂∘r₁₃ + r₂₃⊙r₁₃ − r₁₂◁r₂₃ with a⊙b = a▷b + b◁a."""
    r = _tensor(r)
    circ = lhd + rhd

    def odot(x, y):
        return rhd.mul(x, y) + lhd.mul(y, x)

    return (slot_product(circ, r, r, ("12", "13"))
            + slot_product(odot, r, r, ("23", "13"))
            - slot_product(lhd, r, r, ("12", "23")))


def s_equation_residual(circ, r) -> Tensor:
    """−r₁₂∘r₁₃ + r₁₂∘r₂₃ + [r₁₃, r₂₃] for a product ``circ`` (BilinearOp or
    callable on basis keys)."""
    r = _tensor(r)
    mul = _mul_of(circ)

    def bracket(x, y):
        return mul(x, y) - mul(y, x)

    return (slot_product(mul, r, r, ("12", "23")) - slot_product(mul, r, r, ("12", "13"))
            + slot_product(bracket, r, r, ("13", "23")))


def lift_window(window: GradedWindow) -> GradedWindow:
    """Exponent range a Laurent lift must cover for exact S-equation
    components on window³."""
    return window.widen(-window.hi - 1, -window.lo - 1)


def lift_r_laurent(r, window: GradedWindow) -> Tensor:
    """Σᵢ x tⁱ ⊗ y t⁻ⁱ⁻¹ over r = Σ x⊗y, for every i with both exponents in the window."""
    r = _tensor(r)
    out = {}
    for i in window:
        if -i - 1 not in window:
            continue
        for (x, y), c in r.items():
            out[((x, i), (y, -i - 1))] = c
    return Tensor(out, 2)


def affine_s_equation_residual(lhd: BilinearOp, rhd: BilinearOp, r,
                               window: GradedWindow) -> Tensor:
    """S-equation residual of the Laurent lift of r on A⊗k[t,t⁻¹], all
    components with exponents in window³ (each exact)."""
    lifted = lift_r_laurent(r, lift_window(window))
    return restrict_to_window(s_equation_residual(affine_mul(lhd, rhd), lifted), window)


def affine_s_equation_anchor(lhd: BilinearOp, rhd: BilinearOp, r) -> Tensor:
    """The A⊗A⊗A coefficient of the lifted residual at exponents (0, −1, −2).

    For symmetric r its entry at (i, j, k) is minus the p-NYBE residual's
    entry at (k, i, j); see ``recover_pnybe_residual``.
    """
    res = affine_s_equation_residual(lhd, rhd, r, GradedWindow(-2, 0))
    out = {}
    for key, c in res.items():
        if tuple(e for _, e in key) == (0, -1, -2):
            out[tuple(i for i, _ in key)] = c
    return Tensor._raw(out, 3)


def recover_pnybe_residual(lhd: BilinearOp, rhd: BilinearOp, r) -> Tensor:
    """p-NYBE residual of a symmetric r, read off the lifted S-equation."""
    r = _tensor(r)
    if flip(r) != r:
        raise ValueError("recovery from the lifted S-equation needs a symmetric r")
    return (-affine_s_equation_anchor(lhd, rhd, r)).permute((2, 0, 1))


def dual_basis(form: FormDef, grading: Sequence[int] | None = None) -> DualBasisPair:
    """Dual basis f_q = Σ_s (F⁻¹)[s][q] e_s, so that (e_p, f_q) = δ_pq.

    With a grading (and the form's grading shift m) the inverse is taken
    blockwise, pairing degree d with degree −d−m.
    """
    n = form.space.dim
    F = [list(row) for row in form.matrix]
    basis = tuple(Tensor.unit((p,)) for p in range(n))
    if grading is None:
        inv = linalg.inverse(F)
        dual = tuple(Tensor({(s,): inv[s][q] for s in range(n)}, 1) for q in range(n))
        return DualBasisPair(basis, dual)
    m = form.grading_shift
    if m is None:
        raise ValueError("graded dual basis needs the form's grading shift")
    by_degree: dict[int, list[int]] = {}
    for p, d in enumerate(grading):
        by_degree.setdefault(d, []).append(p)
    dual = [None] * n
    for d, rows in by_degree.items():
        cols = by_degree.get(-d - m, [])
        if len(cols) != len(rows):
            raise linalg.SingularMatrixError(f"degree {d} block is not square")
        block = [[F[p][s] for s in cols] for p in rows]
        inv = linalg.inverse(block)
        for qi, q in enumerate(rows):
            dual[q] = Tensor({(s,): inv[si][qi] for si, s in enumerate(cols)}, 1)
    return DualBasisPair(basis, tuple(dual))


def laurent_dual_exponent(i: int) -> int:
    """tⁱ is dual to t⁻ⁱ⁻¹ under (tⁱ, tʲ) = δ_{i+j+1,0}."""
    return -i - 1


def lift_r_finite(r, form: FormDef, pair: DualBasisPair | None = None) -> Tensor:
    """r_L = Σ_p Σ (x⊗e_p)⊗(y⊗f_p) on A⊗B, index of x⊗e_p being x·dim B + p."""
    r = _tensor(r)
    pair = pair or dual_basis(form)
    nb = form.space.dim
    out: dict = {}
    for (x, y), c in r.items():
        for p in range(nb):
            for (s,), fc in pair.dual[p].items():
                key = (x * nb + p, y * nb + s)
                out[key] = out.get(key, 0) + c * fc
    return Tensor(out, 2)


def _leg_op(mul, a, side):
    if side == "L":
        return lambda x: mul(a, x)
    return lambda x: mul(x, a)


def _combined(*maps):
    def f(x):
        out = Tensor.zero(1)
        for coef, g in maps:
            out = out + g(x) * coef
        return out

    return f


def coboundary_alpha_beta(lhd: BilinearOp, rhd: BilinearOp, r) -> tuple[CoOp, CoOp]:
    """α(a) = (L∘(a)⊗id + id⊗(L▷+R◁)(a)) τr,
    β(a) = −(L▷(a)⊗id + id⊗(L∘+R∘)(a)) r."""
    r = _tensor(r)
    circ = lhd + rhd
    tr = flip(r)
    alpha, beta = {}, {}
    for a in range(lhd.space.dim):
        al = (tr.on_leg(0, _leg_op(circ.mul, a, "L"), 1)
              + tr.on_leg(1, _combined((1, _leg_op(rhd.mul, a, "L")),
                                       (1, _leg_op(lhd.mul, a, "R"))), 1))
        be = -(r.on_leg(0, _leg_op(rhd.mul, a, "L"), 1)
               + r.on_leg(1, _combined((1, _leg_op(circ.mul, a, "L")),
                                       (1, _leg_op(circ.mul, a, "R"))), 1))
        if al:
            alpha[a] = al
        if be:
            beta[a] = be
    return CoOp(lhd.space, alpha), CoOp(lhd.space, beta)


def coboundary_delta(circ: BilinearOp, r) -> CoOp:
    """δ(a) = (L∘(a)⊗id + id⊗(L∘(a) − R∘(a))) r."""
    r = _tensor(r)
    images = {}
    for a in range(circ.space.dim):
        d = (r.on_leg(0, _leg_op(circ.mul, a, "L"), 1)
             + r.on_leg(1, _combined((1, _leg_op(circ.mul, a, "L")),
                                     (-1, _leg_op(circ.mul, a, "R"))), 1))
        if d:
            images[a] = d
    return CoOp(circ.space, images)


def symmetric_pairs(support) -> list[tuple[int, int]]:
    """Unordered pairs i ≤ j of the support (an iterable of basis indices)."""
    idx = sorted(set(support))
    return [(i, j) for n, i in enumerate(idx) for j in idx[n:]]


def symmetric_tensor(pairs, coeffs) -> Tensor:
    out = {}
    for (i, j), c in zip(pairs, coeffs):
        if c:
            out[(i, j)] = c
            out[(j, i)] = c
    return Tensor(out, 2)


def search_pnybe(lhd: BilinearOp, rhd: BilinearOp, coefficient_set,
                 support=None, budget: int = 100_000) -> list[RTensor]:
    """Every symmetric r with entries in ``coefficient_set`` (on the support)
    whose p-NYBE residual is zero, in lexicographic order of the entries."""
    values = sorted({scalar(c) for c in coefficient_set})
    if not values:
        raise ValueError("empty coefficient set")
    support = range(lhd.space.dim) if support is None else support
    for i in support:
        lhd.space.check_index(i)
    pairs = symmetric_pairs(support)
    total = len(values) ** len(pairs)
    if total > budget:
        raise BudgetExceeded(f"{total} candidates exceed the budget of {budget}")
    found = []
    seen = set()
    for coeffs in cartesian(values, repeat=len(pairs)):
        r = symmetric_tensor(pairs, coeffs)
        if r in seen:
            continue
        seen.add(r)
        if not pnybe_residual(lhd, rhd, r):
            found.append(RTensor(r))
    return found
