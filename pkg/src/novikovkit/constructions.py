"""Finite-dimensional constructions built from structure constants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .checks import check_quasi_frobenius, check_symplectic
from .core import (
    BasisSpace,
    BilinearOp,
    CoOp,
    DimensionError,
    FormDef,
    Tensor,
    bullet,
    flip,
)


class DegenerateFormError(ValueError):
    pass


class PreconditionError(ValueError):
    """An input failed the identity check a construction relies on."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


def associated_novikov(lhd: BilinearOp, rhd: BilinearOp) -> BilinearOp:
    """a∘b = a◁b + a▷b."""
    return lhd + rhd


def sub_adjacent_lie(circ: BilinearOp) -> BilinearOp:
    """Commutator bracket [a, b] = a∘b − b∘a."""
    return circ - circ.opposite()


@dataclass(frozen=True)
class TensorAlgebra:
    """A product on A⊗B; basis element e_i⊗f_p has index i*dim(B) + p."""

    left: BasisSpace
    right: BasisSpace
    space: BasisSpace
    product: BilinearOp

    def index(self, i: int, p: int) -> int:
        return i * self.right.dim + p

    def split(self, k: int) -> tuple[int, int]:
        return divmod(k, self.right.dim)

    def element(self, left_label: str, right_label: str) -> Tensor:
        return Tensor.unit((self.index(self.left.index(left_label),
                                       self.right.index(right_label)),))


def tensor_space(left: BasisSpace, right: BasisSpace) -> BasisSpace:
    return left.tensor(right)


def induced_pre_lie(lhd: BilinearOp, rhd: BilinearOp,
                    dashv: BilinearOp, vdash: BilinearOp) -> TensorAlgebra:
    """(a⊗x)∘(b⊗y) = a▷b ⊗ x⊢y − b◁a ⊗ y⊣x on A⊗B."""
    if lhd.space.dim != rhd.space.dim or dashv.space.dim != vdash.space.dim:
        raise DimensionError("paired operations must share a space")
    A, B = lhd.space, dashv.space
    nb = B.dim
    table: dict[tuple[int, int], Tensor] = {}

    def put(key, vA: Tensor, vB: Tensor, sign):
        if not vA or not vB:
            return
        t = bullet(vA, vB, nb) * sign
        table[key] = table.get(key, Tensor.zero(1)) + t

    for a in range(A.dim):
        for b in range(A.dim):
            ab, ba = rhd.mul(a, b), lhd.mul(b, a)
            if not ab and not ba:
                continue
            for x in range(nb):
                for y in range(nb):
                    key = (a * nb + x, b * nb + y)
                    put(key, ab, vdash.mul(x, y), 1)
                    put(key, ba, dashv.mul(y, x), -1)
    return TensorAlgebra(A, B, A.tensor(B), BilinearOp(A.tensor(B), table))


def product_form(omega: FormDef, form: FormDef) -> FormDef:
    """ω_p(a⊗x, b⊗y) = ω(a,b)(x,y), as a Kronecker product."""
    space = omega.space.tensor(form.space)
    return FormDef(space, tuple(tuple(r) for r in linalg.kron(omega.matrix, form.matrix)))


def _solve_against_form(form: FormDef, rhs_for, pairs) -> dict:
    """For each key, the unique v with form(v, e_c) = rhs_for(key)[c] for all c."""
    gram_t = linalg.transpose([list(r) for r in form.matrix])
    try:
        inv = linalg.inverse(gram_t)
    except linalg.SingularMatrixError:
        raise DegenerateFormError("bilinear form is degenerate") from None
    out = {}
    for key in pairs:
        rhs = rhs_for(key)
        if not any(rhs):
            continue
        sol = [sum((inv[r][c] * rhs[c] for c in range(len(rhs))), Fraction(0))
               for r in range(len(rhs))]
        out[key] = Tensor({(k,): v for k, v in enumerate(sol)}, 1)
    return out


def _e(i):
    return Tensor.unit((i,))


def compatible_pre_novikov_from_qf(circ: BilinearOp, omega: FormDef,
                                   verify: bool = True) -> tuple[BilinearOp, BilinearOp]:
    """The pair (◁, ▷) determined by
    ω(a▷b, c) = ω(a∘c + c∘a, b) and ω(a◁b, c) = ω(a, c∘b)."""
    if circ.space.dim != omega.space.dim:
        raise DimensionError("form and product live on different spaces")
    if not omega.is_nondegenerate():
        raise DegenerateFormError("ω is degenerate")
    if verify:
        rep = check_quasi_frobenius(circ, omega)
        if not rep.passed:
            raise PreconditionError("(∘, ω) is not quasi-Frobenius", rep)
    n = circ.space.dim
    pairs = [(a, b) for a in range(n) for b in range(n)]
    w = omega

    def rhs_rhd(key):
        a, b = key
        return [w(circ.mul(a, c) + circ.mul(c, a), _e(b)) for c in range(n)]

    def rhs_lhd(key):
        a, b = key
        return [w(_e(a), circ.mul(c, b)) for c in range(n)]

    rhd = BilinearOp(circ.space, _solve_against_form(omega, rhs_rhd, pairs))
    lhd = BilinearOp(circ.space, _solve_against_form(omega, rhs_lhd, pairs))
    return lhd, rhd


def compatible_pre_lie_from_symplectic(bracket: BilinearOp, omega_p: FormDef,
                                       verify: bool = True) -> BilinearOp:
    """The product ∘ determined by ω(x∘y, z) = −ω(y, [x,z])."""
    if bracket.space.dim != omega_p.space.dim:
        raise DimensionError("form and bracket live on different spaces")
    if not omega_p.is_nondegenerate():
        raise DegenerateFormError("ω is degenerate")
    if verify:
        rep = check_symplectic(bracket, omega_p)
        if not rep.passed:
            raise PreconditionError("ω is not a symplectic form for the bracket", rep)
    n = bracket.space.dim
    pairs = [(x, y) for x in range(n) for y in range(n)]

    def rhs(key):
        x, y = key
        return [-omega_p(_e(y), bracket.mul(x, z)) for z in range(n)]

    return BilinearOp(bracket.space, _solve_against_form(omega_p, rhs, pairs))


def coproduct_from_form(dia: BilinearOp, form: FormDef) -> CoOp:
    """The Δ with (Δ(x), y⊗z) = (x, y⋄z) for all basis x, y, z.

    With Gram matrix F this is D_x = F^{-T} R_x F^{-1}, R_x[y][z] = (x, y⋄z).
    """
    if dia.space.dim != form.space.dim:
        raise DimensionError("form and product live on different spaces")
    n = dia.space.dim
    F = [list(r) for r in form.matrix]
    try:
        Finv = linalg.inverse(F)
    except linalg.SingularMatrixError:
        raise DegenerateFormError("form is degenerate") from None
    FinvT = linalg.transpose(Finv)
    images = {}
    for x in range(n):
        R = [[form(_e(x), dia.mul(y, z)) for z in range(n)] for y in range(n)]
        if not any(any(row) for row in R):
            continue
        D = linalg.matmul(linalg.matmul(FinvT, R), Finv)
        images[x] = Tensor({(j, k): D[j][k] for j in range(n) for k in range(n)}, 2)
    return CoOp(dia.space, images)


def coalgebra_tensor_delta(alpha: CoOp, beta: CoOp, d_dashv: CoOp, d_vdash: CoOp) -> CoOp:
    """δ(a⊗x) = β(a)•Δ⊢(x) − τα(a)•τΔ⊣(x) on A⊗B.

    ``d_dashv`` and ``d_vdash`` are the coproducts dual to ⊣ and ⊢.
    """
    A, B = alpha.space, d_dashv.space
    nb = B.dim
    images = {}
    for a in range(A.dim):
        be, ta = beta.image(a), flip(alpha.image(a))
        if not be and not ta:
            continue
        for x in range(nb):
            t = bullet(be, d_vdash.image(x), nb) - bullet(ta, flip(d_dashv.image(x)), nb)
            if t:
                images[a * nb + x] = t
    return CoOp(A.tensor(B), images)
