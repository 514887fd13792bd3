"""Residual-based identity checkers.

Each checker enumerates every basis tuple, evaluates the residual
(left side minus right side) of each identity exactly, and collects the
tuples where it is nonzero.  Axiom ids are stable strings listed in
``AXIOMS``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from typing import Callable, Iterable, Sequence

from .core import (
    BilinearOp,
    CoOp,
    DimensionError,
    FormDef,
    Tensor,
    flip12,
    flip23,
)

DEFAULT_WITNESS_CAP = 5

AXIOMS = {
    "pre-lie": "(a∘b)∘c − a∘(b∘c) = (b∘a)∘c − b∘(a∘c)",
    "novikov": "(a∘b)∘c = (a∘c)∘b",
    "rn-assoc": "(x⋄y)⋄z − x⋄(y⋄z) = (x⋄z)⋄y − x⋄(z⋄y)",
    "rn-left-comm": "x⋄(y⋄z) = y⋄(x⋄z)",
    "rnd-1a": "x⊢(y⊢z) = y⊢(x⊢z)",
    "rnd-1b": "x⊢(y⊣z) = y⊣(x⊣z)",
    "rnd-2a": "(x⊢y − x⊣y)⊢z = 0",
    "rnd-2b": "x⊣(y⊢z − y⊣z) = 0",
    "rnd-3": "x⊢(y⊢z − z⊣y) = (x⊢y)⊢z − (x⊢z)⊣y",
    "rnd-4": "x⊣(y⊢z − z⊣y) = (x⊣y)⊣z − (x⊣z)⊣y",
    "pn-1": "a▷(b▷c) = (a∘b)▷c + b▷(a▷c) − (b∘a)▷c",
    "pn-2": "a▷(b◁c) = (a▷b)◁c + b◁(a∘c) − (b◁a)◁c",
    "pn-3": "(a∘b)▷c = (a▷c)◁b",
    "pn-4": "(a◁b)◁c = (a◁c)◁b",
    "pnc-1": "(α⊗id)α + (τ⊗id)(id⊗α)β − (id⊗(α+β))α − (τ⊗id)(β⊗id)α = 0",
    "pnc-2": "(id⊗β)β + (τ⊗id)((α+β)⊗id)β − ((α+β)⊗id)β − (τ⊗id)(id⊗β)β = 0",
    "pnc-3": "(id⊗τ)(β⊗id)α − ((α+β)⊗id)β = 0",
    "pnc-4": "(id⊗τ)(α⊗id)α − (α⊗id)α = 0",
    "rnc-1": "(Δ⊗id)Δ − (id⊗τ)(Δ⊗id)Δ = (id⊗Δ)Δ − (id⊗τ)(id⊗Δ)Δ",
    "rnc-2": "(id⊗Δ)Δ = (τ⊗id)(id⊗Δ)Δ",
    "rncd-1a": "(id⊗Δ⊢)Δ⊢ = (τ⊗id)(id⊗Δ⊢)Δ⊢",
    "rncd-1b": "(id⊗Δ⊣)Δ⊢ = (τ⊗id)(id⊗Δ⊣)Δ⊣",
    "rncd-2a": "(Δ⊢⊗id)Δ⊢ = (Δ⊣⊗id)Δ⊢",
    "rncd-2b": "(id⊗Δ⊢)Δ⊣ = (id⊗Δ⊣)Δ⊣",
    "rncd-3": "(id⊗Δ⊢)Δ⊢ − (id⊗τ)(id⊗Δ⊣)Δ⊢ = (Δ⊢⊗id)Δ⊢ − (id⊗τ)(Δ⊢⊗id)Δ⊣",
    "rncd-4": "(id⊗Δ⊢)Δ⊣ − (id⊗τ)(id⊗Δ⊣)Δ⊣ = (Δ⊣⊗id)Δ⊣ − (id⊗τ)(Δ⊣⊗id)Δ⊣",
    "plc": "(id⊗δ)δ − (τ⊗id)(id⊗δ)δ = (δ⊗id)δ − (τ⊗id)(δ⊗id)δ",
    "form-skew": "ω(a,b) = −ω(b,a)",
    "form-symmetric": "(x,y) = (y,x)",
    "form-nondegenerate": "det ≠ 0",
    "qf-cocycle": "ω(a∘b,c) − ω(a∘c+c∘a,b) + ω(c∘b,a) = 0",
    "qpn-rhd": "ω(a▷b,c) = ω(a∘c+c∘a,b)",
    "qpn-lhd": "ω(a◁b,c) = ω(a,c∘b)",
    "qpl-invariance": "ω(x∘y,z) = −ω(y,[x,z])",
    "qrn-invariance": "(x⋄y,z) = −(x,y⋄z+z⋄y)",
    "graded-form": "(B_i,B_j) = 0 unless i+j+m = 0",
    "lie-antisymmetry": "[x,y] = −[y,x]",
    "lie-jacobi": "[[x,y],z] + [[y,z],x] + [[z,x],y] = 0",
    "symplectic-cocycle": "ω([x,y],z) + ω([y,z],x) + ω([z,x],y) = 0",
    "qt-symmetric": "(x,y) = (y,x)",
    "qt-obstruction": "four-term ω-weighted obstruction for the product form",
    "pnybe": "r₁₂∘r₁₃ + r₂₃⊙r₁₃ − r₁₂◁r₂₃ = 0 with a⊙b = a▷b + b◁a",
    "s-equation": "−r₁₂∘r₁₃ + r₁₂∘r₂₃ + [r₁₃,r₂₃] = 0",
    "r-symmetric": "τr = r",
}


@dataclass(frozen=True)
class Witness:
    axiom: str
    args: tuple
    residual: Tensor

    def residual_text(self, labels=None) -> str:
        return format_tensor(self.residual, labels)

    def to_dict(self, labels=None) -> dict:
        return {
            "axiom": self.axiom,
            "statement": AXIOMS.get(self.axiom, ""),
            "args": [a if isinstance(a, str) else format_key((a,), labels) for a in self.args],
            "residual": self.residual_text(labels),
        }


@dataclass
class CheckReport:
    witnesses: list = field(default_factory=list)
    axiom_catalog: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    labels: Sequence[str] | None = None

    @property
    def passed(self) -> bool:
        return not self.witnesses

    def failed_axioms(self) -> set:
        return {w.axiom for w in self.witnesses}

    def merge(self, other: "CheckReport") -> "CheckReport":
        catalog = list(self.axiom_catalog)
        catalog += [a for a in other.axiom_catalog if a not in catalog]
        return CheckReport(self.witnesses + other.witnesses, catalog,
                           self.notes + other.notes, self.labels or other.labels)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "axiom_catalog": list(self.axiom_catalog),
            "witnesses": [w.to_dict(self.labels) for w in self.witnesses],
            "notes": list(self.notes),
        }


def format_key(key, labels=None) -> str:
    def one(k):
        if isinstance(k, tuple) and len(k) == 2 and isinstance(k[0], int):
            base = labels[k[0]] if labels else f"#{k[0]}"
            return f"{base}t^{k[1]}"
        if isinstance(k, int):
            return labels[k] if labels is not None else f"#{k}"
        return str(k)

    parts = [one(k) for k in key]
    if len(parts) > 1:
        parts = [f"({p})" if "⊗" in p else p for p in parts]
    return "⊗".join(parts)


def format_tensor(t: Tensor, labels=None) -> str:
    if not t:
        return "0"
    parts = []
    for key, c in t.items():
        body = format_key(key, labels)
        if not body:
            parts.append(str(c))
        elif c == 1:
            parts.append(body)
        elif c == -1:
            parts.append("-" + body)
        else:
            parts.append(f"{c}*{body}")
    return " + ".join(parts).replace("+ -", "- ")


def scalar_tensor(c) -> Tensor:
    return Tensor({(): c}, 0)


def e(i) -> Tensor:
    return Tensor.unit((i,))


Axiom = tuple  # (axiom id, number of basis arguments, residual function)


def run_axioms(dim: int, axioms: Sequence[Axiom], cap: int = DEFAULT_WITNESS_CAP,
               labels=None, domain: Iterable | None = None) -> CheckReport:
    """Evaluate every axiom on every tuple drawn from ``domain``.

    ``domain`` defaults to ``range(dim)``; residual functions receive the
    tuple entries as positional arguments.
    """
    keys = list(domain) if domain is not None else list(range(dim))
    report = CheckReport(axiom_catalog=[a[0] for a in axioms], labels=labels)
    for axiom_id, nargs, fn in axioms:
        count = 0
        for args in cartesian(keys, repeat=nargs):
            res = fn(*args)
            if not isinstance(res, Tensor):
                res = scalar_tensor(res)
            if res:
                report.witnesses.append(Witness(axiom_id, tuple(
                    labels[a] if labels and isinstance(a, int) else a for a in args), res))
                count += 1
                if count >= cap:
                    break
    return report


def _same_space(*objs):
    dims = {o.space.dim for o in objs if o is not None}
    if len(dims) > 1:
        raise DimensionError("structures live on spaces of different dimension")
    return dims.pop()


# ---------------------------------------------------------------- algebras

def pre_lie_axioms(circ: BilinearOp) -> list:
    m = circ

    def pre_lie(a, b, c):
        ea, eb, ec = e(a), e(b), e(c)
        return (m(m.mul(a, b), ec) - m(ea, m.mul(b, c))
                - m(m.mul(b, a), ec) + m(eb, m.mul(a, c)))

    return [("pre-lie", 3, pre_lie)]


def novikov_axioms(circ: BilinearOp) -> list:
    m = circ

    def right_comm(a, b, c):
        return m(m.mul(a, b), e(c)) - m(m.mul(a, c), e(b))

    return pre_lie_axioms(circ) + [("novikov", 3, right_comm)]


def right_novikov_axioms(dia: BilinearOp) -> list:
    m = dia

    def assoc(x, y, z):
        ex, ey, ez = e(x), e(y), e(z)
        return (m(m.mul(x, y), ez) - m(ex, m.mul(y, z))
                - m(m.mul(x, z), ey) + m(ex, m.mul(z, y)))

    def left_comm(x, y, z):
        return m(e(x), m.mul(y, z)) - m(e(y), m.mul(x, z))

    return [("rn-assoc", 3, assoc), ("rn-left-comm", 3, left_comm)]


def right_novikov_dialgebra_axioms(dashv: BilinearOp, vdash: BilinearOp) -> list:
    L, R = dashv, vdash  # ⊣, ⊢

    def a1a(x, y, z):
        return R(e(x), R.mul(y, z)) - R(e(y), R.mul(x, z))

    def a1b(x, y, z):
        return R(e(x), L.mul(y, z)) - L(e(y), L.mul(x, z))

    def a2a(x, y, z):
        return R(R.mul(x, y) - L.mul(x, y), e(z))

    def a2b(x, y, z):
        return L(e(x), R.mul(y, z) - L.mul(y, z))

    def a3(x, y, z):
        return (R(e(x), R.mul(y, z) - L.mul(z, y))
                - R(R.mul(x, y), e(z)) + L(R.mul(x, z), e(y)))

    def a4(x, y, z):
        return (L(e(x), R.mul(y, z) - L.mul(z, y))
                - L(L.mul(x, y), e(z)) + L(L.mul(x, z), e(y)))

    return [("rnd-1a", 3, a1a), ("rnd-1b", 3, a1b), ("rnd-2a", 3, a2a),
            ("rnd-2b", 3, a2b), ("rnd-3", 3, a3), ("rnd-4", 3, a4)]


def pre_novikov_axioms(lhd: BilinearOp, rhd: BilinearOp) -> list:
    circ = lhd + rhd

    def pn1(a, b, c):
        ea, eb, ec = e(a), e(b), e(c)
        return (rhd(ea, rhd.mul(b, c)) - rhd(circ.mul(a, b), ec)
                - rhd(eb, rhd.mul(a, c)) + rhd(circ.mul(b, a), ec))

    def pn2(a, b, c):
        ea, eb, ec = e(a), e(b), e(c)
        return (rhd(ea, lhd.mul(b, c)) - lhd(rhd.mul(a, b), ec)
                - lhd(eb, circ.mul(a, c)) + lhd(lhd.mul(b, a), ec))

    def pn3(a, b, c):
        return rhd(circ.mul(a, b), e(c)) - lhd(rhd.mul(a, c), e(b))

    def pn4(a, b, c):
        return lhd(lhd.mul(a, b), e(c)) - lhd(lhd.mul(a, c), e(b))

    return [("pn-1", 3, pn1), ("pn-2", 3, pn2), ("pn-3", 3, pn3), ("pn-4", 3, pn4)]


def check_pre_lie(circ: BilinearOp, cap=DEFAULT_WITNESS_CAP, labels=None) -> CheckReport:
    return run_axioms(circ.space.dim, pre_lie_axioms(circ), cap, labels)


def check_novikov(circ: BilinearOp, cap=DEFAULT_WITNESS_CAP, labels=None) -> CheckReport:
    return run_axioms(circ.space.dim, novikov_axioms(circ), cap, labels)


def check_right_novikov(dia: BilinearOp, cap=DEFAULT_WITNESS_CAP, labels=None) -> CheckReport:
    return run_axioms(dia.space.dim, right_novikov_axioms(dia), cap, labels)


def check_right_novikov_dialgebra(dashv: BilinearOp, vdash: BilinearOp,
                                  cap=DEFAULT_WITNESS_CAP, labels=None) -> CheckReport:
    dim = _same_space(dashv, vdash)
    return run_axioms(dim, right_novikov_dialgebra_axioms(dashv, vdash), cap, labels)


def check_pre_novikov(lhd: BilinearOp, rhd: BilinearOp,
                      cap=DEFAULT_WITNESS_CAP, labels=None) -> CheckReport:
    dim = _same_space(lhd, rhd)
    return run_axioms(dim, pre_novikov_axioms(lhd, rhd), cap, labels)


def check_jacobi(bracket: BilinearOp, cap=DEFAULT_WITNESS_CAP, labels=None) -> CheckReport:
    br = bracket

    def anti(x, y):
        return br.mul(x, y) + br.mul(y, x)

    def jacobi(x, y, z):
        return br(br.mul(x, y), e(z)) + br(br.mul(y, z), e(x)) + br(br.mul(z, x), e(y))

    return run_axioms(br.space.dim, [("lie-antisymmetry", 2, anti), ("lie-jacobi", 3, jacobi)],
                      cap, labels)


# -------------------------------------------------------------- coalgebras

def _then(t: Tensor, leg: int, c: CoOp) -> Tensor:
    return t.on_leg(leg, c.image, 2)


def pre_novikov_coalgebra_axioms(alpha: CoOp, beta: CoOp) -> list:
    ab = alpha + beta

    def c1(a):
        al, be = alpha.image(a), beta.image(a)
        return (_then(al, 0, alpha) + flip12(_then(be, 1, alpha))
                - _then(al, 1, ab) - flip12(_then(al, 0, beta)))

    def c2(a):
        be = beta.image(a)
        return (_then(be, 1, beta) + flip12(_then(be, 0, ab))
                - _then(be, 0, ab) - flip12(_then(be, 1, beta)))

    def c3(a):
        return flip23(_then(alpha.image(a), 0, beta)) - _then(beta.image(a), 0, ab)

    def c4(a):
        x = _then(alpha.image(a), 0, alpha)
        return flip23(x) - x

    return [("pnc-1", 1, c1), ("pnc-2", 1, c2), ("pnc-3", 1, c3), ("pnc-4", 1, c4)]


def right_novikov_coalgebra_axioms(delta: CoOp) -> list:
    def c1(x):
        d = delta.image(x)
        left = _then(d, 0, delta)
        right = _then(d, 1, delta)
        return left - flip23(left) - right + flip23(right)

    def c2(x):
        right = _then(delta.image(x), 1, delta)
        return right - flip12(right)

    return [("rnc-1", 1, c1), ("rnc-2", 1, c2)]


def right_novikov_co_dialgebra_axioms(d_dashv: CoOp, d_vdash: CoOp) -> list:
    da, db = d_dashv, d_vdash  # dual to ⊣ and ⊢

    def c1a(x):
        t = _then(db.image(x), 1, db)
        return t - flip12(t)

    def c1b(x):
        return _then(db.image(x), 1, da) - flip12(_then(da.image(x), 1, da))

    def c2a(x):
        b = db.image(x)
        return _then(b, 0, db) - _then(b, 0, da)

    def c2b(x):
        a = da.image(x)
        return _then(a, 1, db) - _then(a, 1, da)

    def c3(x):
        a, b = da.image(x), db.image(x)
        return (_then(b, 1, db) - flip23(_then(b, 1, da))
                - _then(b, 0, db) + flip23(_then(a, 0, db)))

    def c4(x):
        a = da.image(x)
        return (_then(a, 1, db) - flip23(_then(a, 1, da))
                - _then(a, 0, da) + flip23(_then(a, 0, da)))

    return [("rncd-1a", 1, c1a), ("rncd-1b", 1, c1b), ("rncd-2a", 1, c2a),
            ("rncd-2b", 1, c2b), ("rncd-3", 1, c3), ("rncd-4", 1, c4)]


def pre_lie_coalgebra_residual(delta_image: Callable, key) -> Tensor:
    d = delta_image(key)
    right = d.on_leg(1, delta_image, 2)
    left = d.on_leg(0, delta_image, 2)
    return right - flip12(right) - left + flip12(left)


def check_pre_novikov_coalgebra(alpha: CoOp, beta: CoOp,
                                cap=DEFAULT_WITNESS_CAP, labels=None) -> CheckReport:
    dim = _same_space(alpha, beta)
    return run_axioms(dim, pre_novikov_coalgebra_axioms(alpha, beta), cap, labels)


def check_right_novikov_coalgebra(delta: CoOp, cap=DEFAULT_WITNESS_CAP,
                                  labels=None) -> CheckReport:
    return run_axioms(delta.space.dim, right_novikov_coalgebra_axioms(delta), cap, labels)


def check_right_novikov_co_dialgebra(d_dashv: CoOp, d_vdash: CoOp,
                                     cap=DEFAULT_WITNESS_CAP, labels=None) -> CheckReport:
    dim = _same_space(d_dashv, d_vdash)
    return run_axioms(dim, right_novikov_co_dialgebra_axioms(d_dashv, d_vdash), cap, labels)


def check_pre_lie_coalgebra(delta: CoOp, cap=DEFAULT_WITNESS_CAP, labels=None) -> CheckReport:
    return run_axioms(delta.space.dim,
                      [("plc", 1, lambda a: pre_lie_coalgebra_residual(delta.image, a))],
                      cap, labels)


# ------------------------------------------------------------------- forms

def _form_shape_axioms(form: FormDef, kind: str) -> list:
    out = []
    if kind == "skew":
        out.append(("form-skew", 2, lambda a, b: form.entry(a, b) + form.entry(b, a)))
    elif kind == "symmetric":
        out.append(("form-symmetric", 2, lambda a, b: form.entry(a, b) - form.entry(b, a)))
    out.append(("form-nondegenerate", 0, lambda: Fraction(int(form.det() == 0))))
    return out


def check_form(form: FormDef, kind: str = "skew", cap=DEFAULT_WITNESS_CAP,
               labels=None) -> CheckReport:
    """Nondegeneracy plus skew-symmetry (``kind="skew"``) or symmetry."""
    return run_axioms(form.space.dim, _form_shape_axioms(form, kind), cap, labels)


def _omega(form: FormDef):
    """ω on vectors, so that residual code reads like the identities."""
    return form.__call__


def check_quasi_frobenius(circ: BilinearOp, omega: FormDef,
                          cap=DEFAULT_WITNESS_CAP, labels=None) -> CheckReport:
    dim = _same_space(circ, omega)
    w, m = _omega(omega), circ

    def cocycle(a, b, c):
        return (w(m.mul(a, b), e(c)) - w(m.mul(a, c) + m.mul(c, a), e(b))
                + w(m.mul(c, b), e(a)))

    return run_axioms(dim, _form_shape_axioms(omega, "skew") + [("qf-cocycle", 3, cocycle)],
                      cap, labels)


def quadratic_pre_novikov_axioms(lhd, rhd, omega: FormDef) -> list:
    circ = lhd + rhd
    w = _omega(omega)

    def t_rhd(a, b, c):
        return w(rhd.mul(a, b), e(c)) - w(circ.mul(a, c) + circ.mul(c, a), e(b))

    def t_lhd(a, b, c):
        return w(lhd.mul(a, b), e(c)) - w(e(a), circ.mul(c, b))

    return [("qpn-rhd", 3, t_rhd), ("qpn-lhd", 3, t_lhd)]


def check_quadratic_pre_novikov(lhd: BilinearOp, rhd: BilinearOp, omega: FormDef,
                                cap=DEFAULT_WITNESS_CAP, labels=None) -> CheckReport:
    dim = _same_space(lhd, rhd, omega)
    axioms = (pre_novikov_axioms(lhd, rhd) + _form_shape_axioms(omega, "skew")
              + quadratic_pre_novikov_axioms(lhd, rhd, omega))
    return run_axioms(dim, axioms, cap, labels)


def check_quadratic_pre_lie(circ: BilinearOp, omega_p: FormDef,
                            cap=DEFAULT_WITNESS_CAP, labels=None) -> CheckReport:
    dim = _same_space(circ, omega_p)
    w, m = _omega(omega_p), circ

    def inv(x, y, z):
        return w(m.mul(x, y), e(z)) + w(e(y), m.mul(x, z) - m.mul(z, x))

    axioms = pre_lie_axioms(circ) + _form_shape_axioms(omega_p, "skew") + [
        ("qpl-invariance", 3, inv)]
    return run_axioms(dim, axioms, cap, labels)


def quadratic_right_novikov_axioms(dia: BilinearOp, form: FormDef) -> list:
    w, m = _omega(form), dia

    def inv(x, y, z):
        return w(m.mul(x, y), e(z)) + w(e(x), m.mul(y, z) + m.mul(z, y))

    return [("qrn-invariance", 3, inv)]


def check_quadratic_right_novikov(dia: BilinearOp, form: FormDef,
                                  cap=DEFAULT_WITNESS_CAP, labels=None) -> CheckReport:
    dim = _same_space(dia, form)
    axioms = (right_novikov_axioms(dia) + _form_shape_axioms(form, "symmetric")
              + quadratic_right_novikov_axioms(dia, form))
    return run_axioms(dim, axioms, cap, labels)


def check_symplectic(bracket: BilinearOp, omega: FormDef,
                     cap=DEFAULT_WITNESS_CAP, labels=None) -> CheckReport:
    """Skew, nondegenerate, and a 2-cocycle for ``bracket``."""
    dim = _same_space(bracket, omega)
    w, br = _omega(omega), bracket

    def cocycle(x, y, z):
        return w(br.mul(x, y), e(z)) + w(br.mul(y, z), e(x)) + w(br.mul(z, x), e(y))

    return run_axioms(dim, _form_shape_axioms(omega, "skew")
                      + [("symplectic-cocycle", 3, cocycle)], cap, labels)


def check_graded_form(form: FormDef, grading: Sequence[int], shift: int | None = None,
                      cap=DEFAULT_WITNESS_CAP, labels=None) -> CheckReport:
    """``grading[i]`` is the degree of basis element i; the shift defaults to
    the form's ``grading_shift``."""
    m = form.grading_shift if shift is None else shift
    if m is None:
        raise ValueError("graded form check needs a grading shift")
    if len(grading) != form.space.dim:
        raise DimensionError("grading must assign a degree to every basis element")

    def graded(i, j):
        if grading[i] + grading[j] + m == 0:
            return Fraction(0)
        return form.entry(i, j)

    return run_axioms(form.space.dim, [("graded-form", 2, graded)], cap, labels)


def quadratic_tensor_obstruction(lhd: BilinearOp, rhd: BilinearOp, omega: FormDef,
                                 dashv: BilinearOp, vdash: BilinearOp, form: FormDef,
                                 cap=DEFAULT_WITNESS_CAP) -> CheckReport:
    """Obstruction to the product form being quadratic on the induced algebra.

    Evaluates, for every (a, b, c) in A and (x, y, z) in B, the sum
      ω(b∘c,a)(−(y,x⊢z) − (y,z⊣x) + (y,z⊢x) + (y,x⊣z))
      + ω(c∘b,a)(−(y,z⊣x) + (y,z⊢x))
      + ω(a∘c,b)((x⊢y,z) − (y,x⊢z))
      + ω(c∘a,b)((x⊢y,z) + (y⊣x,z) + (y,z⊣x))
    and also requires the form on B to be symmetric.
    """
    circ = lhd + rhd
    w, p = _omega(omega), _omega(form)
    n_a, n_b = _same_space(lhd, rhd, omega), _same_space(dashv, vdash, form)
    L, R = dashv, vdash

    def obstruction(idx_a, idx_b):
        a, b, c = idx_a
        x, y, z = idx_b
        ey, ez = e(y), e(z)
        k1 = w(circ.mul(b, c), e(a))
        k2 = w(circ.mul(c, b), e(a))
        k3 = w(circ.mul(a, c), e(b))
        k4 = w(circ.mul(c, a), e(b))
        total = Fraction(0)
        if k1:
            total += k1 * (-p(ey, R.mul(x, z)) - p(ey, L.mul(z, x))
                           + p(ey, R.mul(z, x)) + p(ey, L.mul(x, z)))
        if k2:
            total += k2 * (-p(ey, L.mul(z, x)) + p(ey, R.mul(z, x)))
        if k3:
            total += k3 * (p(R.mul(x, y), ez) - p(ey, R.mul(x, z)))
        if k4:
            total += k4 * (p(R.mul(x, y), ez) + p(L.mul(y, x), ez) + p(ey, L.mul(z, x)))
        return total

    triples_a = list(cartesian(range(n_a), repeat=3))
    triples_b = list(cartesian(range(n_b), repeat=3))
    report = run_axioms(n_b, [("qt-symmetric", 2,
                               lambda i, j: form.entry(i, j) - form.entry(j, i))], cap)
    report.axiom_catalog.append("qt-obstruction")
    count = 0
    for ta in triples_a:
        for tb in triples_b:
            val = obstruction(ta, tb)
            if val:
                report.witnesses.append(Witness("qt-obstruction", ta + tb, scalar_tensor(val)))
                count += 1
                if count >= cap:
                    break
        if count >= cap:
            break
    return report
