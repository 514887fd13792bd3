"""Bialgebra compatibility conditions and the tensor-product pipeline.

The compatibility conditions are stored as text in a small notation and
interpreted by one evaluator, so the encoding printed in reports is the
encoding that runs.  A term looks like::

    -2(R◁(b)⊗id)(τα+β)(a∘b-b∘a)

that is: an integer coefficient, an optional leg operator ``(X(v)⊗id)`` or
``(id⊗X(v))`` where X is a combination of L◁, R▷, L∘ ... and v is ``a`` or
``b``, a co-operation combination such as ``τα+β``, and finally the argument,
a combination of ``a``, ``b`` and products like ``b◁a``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .checks import (
    AXIOMS,
    DEFAULT_WITNESS_CAP,
    CheckReport,
    check_pre_lie,
    check_pre_lie_coalgebra,
    check_pre_novikov,
    check_pre_novikov_coalgebra,
    check_quadratic_right_novikov,
    run_axioms,
)
from .constructions import (
    PreconditionError,
    TensorAlgebra,
    coalgebra_tensor_delta,
    coproduct_from_form,
    induced_pre_lie,
)
from .core import BasisSpace, BilinearOp, CoOp, DimensionError, FormDef, Tensor

PRE_NOVIKOV_BIALGEBRA_CONDITIONS = {
    "pnb-1": (["(τα+β)(a∘b)"],
              ["((L▷+2R◁)(a)⊗id)(τα+β)(b)", "(id⊗L∘(a))(τα+β)(b)",
               "(id⊗R∘(b))(2τα+β)(a)", "-(R◁(b)⊗id)τα(a)"]),
    "pnb-2": (["τα(a∘b-b∘a)"],
              ["((L▷+R◁)(a)⊗id)τα(b)", "(id⊗L∘(a))τα(b)",
               "-((L▷+R◁)(b)⊗id)τα(a)", "-(id⊗L∘(b))τα(a)"]),
    "pnb-3": (["(α+β)(a▷b+b◁a)"],
              ["(id⊗(R▷+L◁)(b))(2τα+β)(a)", "-(L◁(b)⊗id)α(a)",
               "((L▷+2R◁)(a)⊗id)(α+β)(b)", "(id⊗(L▷+R◁)(a))(α+β)(b)"]),
    "pnb-4": (["(α+β-τα-τβ)(b◁a)"],
              ["(id⊗L◁(b))(τα+β)(a)", "-(L◁(b)⊗id)(α+τβ)(a)",
               "(id⊗R◁(a))(α+β)(b)", "-(R◁(a)⊗id)(τα+τβ)(b)"]),
    "pnb-5": (["(id⊗R∘(b))(τα+β)(a)", "-(R◁(b)⊗id)(τα+β)(a)"],
              ["(id⊗R∘(a))(τα+β)(b)", "-(R◁(a)⊗id)(τα+β)(b)"]),
    "pnb-6": (["τα(a∘b)"],
              ["(id⊗R∘(b))τα(a)", "((L▷+R◁)(a)⊗id)(τα+β)(b)"]),
    "pnb-7": (["(id⊗(R▷+L◁)(b))τα(a)"],
              ["((R▷+L◁)(b)⊗id)α(a)", "(id⊗(L▷+R◁)(a))(τα+τβ)(b)",
               "-((L▷+R◁)(a)⊗id)(α+β)(b)"]),
    "pnb-8": (["(α+β)(b◁a)"],
              ["(id⊗(R▷+L◁)(b))(τα+β)(a)", "(R◁(a)⊗id)(α+β)(b)"]),
}

PRE_LIE_BIALGEBRA_CONDITIONS = {
    "plb-1": (["(δ-τδ)(a∘b)", "-(L∘(a)⊗id)(δ-τδ)(b)", "-(id⊗L∘(a))(δ-τδ)(b)",
               "-(id⊗R∘(b))δ(a)", "(R∘(b)⊗id)τδ(a)"], []),
    "plb-2": (["δ(a∘b-b∘a)", "-(id⊗(R∘-L∘)(b))δ(a)", "-(id⊗(L∘-R∘)(a))δ(b)",
               "-(L∘(a)⊗id)δ(b)", "(L∘(b)⊗id)δ(a)"], []),
}


class NotationError(ValueError):
    pass


@dataclass(frozen=True)
class Term:
    coef: int
    leg: int | None  # 0: operator on the left factor, 1: on the right one
    operator: tuple  # ((coef, "L"|"R", op symbol), ...)
    operator_var: str | None
    coop: tuple  # ((coef, flipped, coop symbol), ...)
    argument: tuple  # ((coef, left var, op symbol | None, right var | None), ...)
    text: str


def _group(s: str, start: int) -> int:
    """Index just past the parenthesised group opening at ``start``."""
    depth = 0
    for i in range(start, len(s)):
        if s[i] == "(":
            depth += 1
        elif s[i] == ")":
            depth -= 1
            if depth == 0:
                return i + 1
    raise NotationError(f"unbalanced parentheses in {s!r}")


def _split_combo(s: str) -> list[tuple[int, str]]:
    if s.startswith("(") and _group(s, 0) == len(s):
        s = s[1:-1]
    out = []
    for m in re.finditer(r"([+-]?)(\d*)([^+-]+)", s):
        sign, digits, body = m.groups()
        c = int(digits) if digits else 1
        out.append((-c if sign == "-" else c, body))
    if not out:
        raise NotationError(f"empty combination {s!r}")
    return out


def _parse_operator(s: str):
    m = re.fullmatch(r"(\(.+\)|[LR].)\(([ab])\)", s)
    if not m:
        raise NotationError(f"bad leg operator {s!r}")
    parts = []
    for c, body in _split_combo(m.group(1)):
        if not re.fullmatch(r"[LR].", body):
            raise NotationError(f"bad operator {body!r}")
        parts.append((c, body[0], body[1]))
    return tuple(parts), m.group(2)


def _parse_coop(s: str):
    parts = []
    for c, body in _split_combo(s):
        m = re.fullmatch(r"(τ?)(.)", body)
        if not m:
            raise NotationError(f"bad co-operation {body!r}")
        parts.append((c, bool(m.group(1)), m.group(2)))
    return tuple(parts)


def _parse_argument(s: str):
    parts = []
    for c, body in _split_combo(s):
        m = re.fullmatch(r"([ab])(?:(.)([ab]))?", body)
        if not m:
            raise NotationError(f"bad argument {body!r}")
        parts.append((c, m.group(1), m.group(2), m.group(3)))
    return tuple(parts)


@lru_cache(maxsize=None)
def parse_term(text: str) -> Term:
    s = text.replace(" ", "")
    m = re.match(r"([+-]?)(\d*)", s)
    coef = int(m.group(2)) if m.group(2) else 1
    if m.group(1) == "-":
        coef = -coef
    pos = m.end()
    leg = None
    operator, operator_var = (), None
    if s.startswith("(", pos):
        end = _group(s, pos)
        inner = s[pos + 1:end - 1]
        if inner.endswith("⊗id") or inner.startswith("id⊗"):
            if inner.endswith("⊗id"):
                leg, op_text = 0, inner[:-3]
            else:
                leg, op_text = 1, inner[3:]
            operator, operator_var = _parse_operator(op_text)
            pos = end
    if s.startswith("(", pos):
        end = _group(s, pos)
        coop = _parse_coop(s[pos:end])
        pos = end
    else:
        mc = re.match(r"τ?.", s[pos:])
        if not mc:
            raise NotationError(f"missing co-operation in {text!r}")
        coop = _parse_coop(mc.group(0))
        pos += mc.end()
    if not s.startswith("(", pos) or _group(s, pos) != len(s):
        raise NotationError(f"argument must close the term {text!r}")
    argument = _parse_argument(s[pos + 1:-1])
    return Term(coef, leg, operator, operator_var, coop, argument, text)


class Structure:
    """Adapter exposing products and coproducts on basis keys.

    ``mul(sym, x, y)`` returns a vector, ``comul(sym, x)`` a 2-tensor.
    """

    def __init__(self, mul: Callable, comul: Callable):
        self.mul = mul
        self.comul = comul

    @classmethod
    def finite(cls, ops: dict, coops: dict) -> "Structure":
        def mul(sym, x, y):
            return ops[sym].mul(x, y)

        def comul(sym, x):
            return coops[sym].image(x)

        return cls(mul, comul)


def evaluate_term(term: Term, st: Structure, a, b) -> Tensor:
    var = {"a": a, "b": b}
    arg: dict = {}
    for c, x, sym, y in term.argument:
        if sym is None:
            arg[var[x]] = arg.get(var[x], 0) + c
        else:
            for (k,), v in st.mul(sym, var[x], var[y]).items():
                arg[k] = arg.get(k, 0) + c * v
    terms: dict = {}
    for key, c in arg.items():
        if not c:
            continue
        for cc, flipped, sym in term.coop:
            for (p, q), v in st.comul(sym, key).items():
                k = (q, p) if flipped else (p, q)
                terms[k] = terms.get(k, 0) + c * cc * v
    image = Tensor._raw(terms, 2)
    if term.leg is not None and image:
        v = var[term.operator_var]
        parts = term.operator

        def leg_map(x):
            out: dict = {}
            for c, side, sym in parts:
                prod = st.mul(sym, v, x) if side == "L" else st.mul(sym, x, v)
                for k, w in prod.items():
                    out[k] = out.get(k, 0) + c * w
            return Tensor._raw(out, 1)

        image = image.on_leg(term.leg, leg_map, 1)
    return image * term.coef


def condition_residual(condition, st: Structure, a, b) -> Tensor:
    lhs, rhs = condition
    total = Tensor.zero(2)
    for text in lhs:
        total = total + evaluate_term(parse_term(text), st, a, b)
    for text in rhs:
        total = total - evaluate_term(parse_term(text), st, a, b)
    return total


def render_condition(condition) -> str:
    lhs, rhs = condition

    def side(terms):
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    return f"{side(lhs)} = {side(rhs)}"


AXIOMS.update({cid: render_condition(c) for cid, c in PRE_NOVIKOV_BIALGEBRA_CONDITIONS.items()})
AXIOMS.update({cid: render_condition(c) for cid, c in PRE_LIE_BIALGEBRA_CONDITIONS.items()})


@dataclass(frozen=True)
class PreNovikovBialgebra:
    lhd: BilinearOp
    rhd: BilinearOp
    alpha: CoOp
    beta: CoOp

    def __post_init__(self):
        if len({self.lhd.space.dim, self.rhd.space.dim,
                self.alpha.space.dim, self.beta.space.dim}) != 1:
            raise DimensionError("bialgebra structures must share one space")

    @property
    def space(self) -> BasisSpace:
        return self.lhd.space

    @property
    def circ(self) -> BilinearOp:
        return self.lhd + self.rhd

    def structure(self) -> Structure:
        return Structure.finite({"◁": self.lhd, "▷": self.rhd, "∘": self.circ},
                                {"α": self.alpha, "β": self.beta})


@dataclass(frozen=True)
class PreLieBialgebra:
    circ: BilinearOp
    delta: CoOp
    tensor: TensorAlgebra | None = None

    @property
    def space(self) -> BasisSpace:
        return self.circ.space

    def structure(self) -> Structure:
        return Structure.finite({"∘": self.circ}, {"δ": self.delta})


def _condition_axioms(conditions: dict, st: Structure) -> list:
    return [(cid, 2, (lambda cond: lambda a, b: condition_residual(cond, st, a, b))(cond))
            for cid, cond in conditions.items()]


def check_pre_novikov_compatibility(bialg: PreNovikovBialgebra,
                                    cap=DEFAULT_WITNESS_CAP, labels=None) -> CheckReport:
    """Only the eight compatibility conditions."""
    rep = run_axioms(bialg.space.dim,
                     _condition_axioms(PRE_NOVIKOV_BIALGEBRA_CONDITIONS, bialg.structure()),
                     cap, labels)
    rep.notes = [f"{cid}: {render_condition(c)}"
                 for cid, c in PRE_NOVIKOV_BIALGEBRA_CONDITIONS.items()]
    return rep


def check_pre_novikov_bialgebra(bialg: PreNovikovBialgebra, cap=DEFAULT_WITNESS_CAP,
                                labels=None) -> CheckReport:
    """Algebra, coalgebra and compatibility identities together."""
    return (check_pre_novikov(bialg.lhd, bialg.rhd, cap, labels)
            .merge(check_pre_novikov_coalgebra(bialg.alpha, bialg.beta, cap, labels))
            .merge(check_pre_novikov_compatibility(bialg, cap, labels)))


def check_pre_lie_compatibility(bialg: PreLieBialgebra, cap=DEFAULT_WITNESS_CAP,
                                labels=None) -> CheckReport:
    rep = run_axioms(bialg.space.dim,
                     _condition_axioms(PRE_LIE_BIALGEBRA_CONDITIONS, bialg.structure()),
                     cap, labels)
    rep.notes = [f"{cid}: {render_condition(c)}"
                 for cid, c in PRE_LIE_BIALGEBRA_CONDITIONS.items()]
    return rep


def check_pre_lie_bialgebra(bialg: PreLieBialgebra, cap=DEFAULT_WITNESS_CAP,
                            labels=None) -> CheckReport:
    return (check_pre_lie(bialg.circ, cap, labels)
            .merge(check_pre_lie_coalgebra(bialg.delta, cap, labels))
            .merge(check_pre_lie_compatibility(bialg, cap, labels)))


def build_pre_lie_bialgebra(bialg: PreNovikovBialgebra, dia: BilinearOp, form: FormDef,
                            verify: bool = True) -> PreLieBialgebra:
    """Pre-Lie bialgebra on A⊗B from a pre-Novikov bialgebra on A and a
    quadratic right Novikov algebra (B, ⋄, form).

    The product is the induced one with ⊣ = ⊢ = ⋄; the coproduct uses the
    Δ dual to ⋄ through the form for both co-operations.
    """
    if verify:
        rep = check_pre_novikov_bialgebra(bialg)
        if not rep.passed:
            raise PreconditionError("input is not a pre-Novikov bialgebra", rep)
        rep = check_quadratic_right_novikov(dia, form)
        if not rep.passed:
            raise PreconditionError("input is not a quadratic right Novikov algebra", rep)
    delta_b = coproduct_from_form(dia, form)
    tensor = induced_pre_lie(bialg.lhd, bialg.rhd, dia, dia)
    delta = coalgebra_tensor_delta(bialg.alpha, bialg.beta, delta_b, delta_b)
    return PreLieBialgebra(tensor.product, delta, tensor)


__all__ = [
    "PRE_NOVIKOV_BIALGEBRA_CONDITIONS",
    "PRE_LIE_BIALGEBRA_CONDITIONS",
    "PreNovikovBialgebra",
    "PreLieBialgebra",
    "Structure",
    "Term",
    "NotationError",
    "parse_term",
    "evaluate_term",
    "condition_residual",
    "render_condition",
    "check_pre_novikov_compatibility",
    "check_pre_novikov_bialgebra",
    "check_pre_lie_compatibility",
    "check_pre_lie_bialgebra",
    "build_pre_lie_bialgebra",
]
