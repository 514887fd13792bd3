"""Exact finite-dimensional multilinear algebra.

Everything here works over ``fractions.Fraction``.  Tensors are sparse
mappings from key tuples to nonzero coefficients; a key entry is usually a
basis index, but any hashable, mutually comparable value works (the graded
code uses ``(index, exponent)`` pairs).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from typing import Callable, Iterable, Mapping

Scalar = Fraction


class DimensionError(ValueError):
    pass


def scalar(value) -> Fraction:
    """Coerce ``value`` to an exact rational.

    Accepts ints, Fractions and strings such as ``"-3/4"``.  Floats are
    refused so that no rounding can sneak in.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact scalar {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = "".join(value.split())
        if "." in text or "e" in text.lower():
            raise ValueError(f"not an exact rational: {value!r}")
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise ValueError(f"zero denominator in {value!r}") from None
    raise TypeError(f"cannot interpret {value!r} as a scalar")


def format_scalar(c: Fraction) -> str:
    return str(c)


@dataclass(frozen=True)
class BasisSpace:
    """A vector space with an ordered, labelled basis."""

    name: str
    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if not self.labels:
            raise ValueError(f"space {self.name!r} needs at least one basis element")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"space {self.name!r} has repeated basis labels")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"{label!r} is not a basis label of {self.name!r}") from None

    def vec(self, label: str) -> "Tensor":
        return Tensor.unit((self.index(label),))

    def dual(self) -> "BasisSpace":
        # dual of a dual gives back the original names
        def toggle(s):
            return s[:-1] if s.endswith("*") else s + "*"

        return BasisSpace(toggle(self.name), tuple(toggle(l) for l in self.labels))

    def tensor(self, other: "BasisSpace") -> "BasisSpace":
        """Product space with basis ordered lexicographically by (left, right)."""
        labels = tuple(f"{a}⊗{b}" for a in self.labels for b in other.labels)
        return BasisSpace(f"{self.name}⊗{other.name}", labels)

    def check_index(self, i) -> None:
        if not isinstance(i, int) or not 0 <= i < self.dim:
            raise DimensionError(f"index {i!r} out of range for {self.name} (dim {self.dim})")


class Tensor:
    """Sparse exact element of V^{⊗n}, stored without zero coefficients."""

    __slots__ = ("arity", "_terms", "_hash")

    def __init__(self, terms: Mapping[tuple, object] | Iterable[tuple[tuple, object]] = (),
                 arity: int | None = None):
        items = terms.items() if isinstance(terms, (dict, Mapping)) else terms
        clean: dict[tuple, Fraction] = {}
        for key, c in items:
            key = tuple(key)
            if arity is None:
                arity = len(key)
            elif len(key) != arity:
                raise DimensionError(f"key {key!r} does not have arity {arity}")
            c = scalar(c)
            if c:
                total = clean.get(key, 0) + c
                if total:
                    clean[key] = total
                else:
                    clean.pop(key, None)
        if arity is None:
            raise ValueError("arity is required for an empty tensor")
        self.arity = arity
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def zero(cls, arity: int) -> "Tensor":
        return cls({}, arity)

    @classmethod
    def unit(cls, key: tuple, coeff=1) -> "Tensor":
        key = tuple(key)
        return cls._raw({key: scalar(coeff)}, len(key))

    @classmethod
    def _raw(cls, terms: dict, arity: int) -> "Tensor":
        # terms already canonical apart from ordering
        t = cls.__new__(cls)
        t.arity = arity
        t._terms = dict(sorted((k, v) for k, v in terms.items() if v))
        t._hash = None
        return t

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def get(self, key, default=Fraction(0)) -> Fraction:
        return self._terms.get(tuple(key), default)

    def __getitem__(self, key) -> Fraction:
        return self._terms.get(tuple(key), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: "Tensor"):
        if not isinstance(other, Tensor):
            return NotImplemented
        if other.arity != self.arity and self._terms and other._terms:
            raise DimensionError(f"arity mismatch: {self.arity} vs {other.arity}")
        return None

    def __add__(self, other):
        if (bad := self._check(other)) is not None:
            return bad
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return Tensor._raw(out, self.arity if self._terms else other.arity)

    def __sub__(self, other):
        if (bad := self._check(other)) is not None:
            return bad
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) - v
        return Tensor._raw(out, self.arity if self._terms else other.arity)

    def __neg__(self):
        return Tensor._raw({k: -v for k, v in self._terms.items()}, self.arity)

    def __mul__(self, c):
        if isinstance(c, Tensor):
            return NotImplemented
        c = scalar(c)
        if c == 1:
            return self
        return Tensor._raw({k: c * v for k, v in self._terms.items()}, self.arity)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, Tensor):
            return NotImplemented
        if not self._terms and not other._terms:
            return True
        return self.arity == other.arity and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, tuple(self._terms.items())))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return f"Tensor.zero({self.arity})"
        return f"Tensor({self._terms!r})"

    def permute(self, order: tuple[int, ...]) -> "Tensor":
        """Tensor whose leg ``n`` is this tensor's leg ``order[n]``."""
        if not self._terms:
            return Tensor.zero(len(order))
        if sorted(order) != list(range(self.arity)):
            raise DimensionError(f"{order!r} is not a permutation of {self.arity} legs")
        return Tensor._raw({tuple(k[i] for i in order): v for k, v in self._terms.items()},
                           self.arity)

    def outer(self, other: "Tensor") -> "Tensor":
        out = {}
        for k1, v1 in self._terms.items():
            for k2, v2 in other._terms.items():
                out[k1 + k2] = v1 * v2
        return Tensor._raw(out, self.arity + other.arity)

    def on_leg(self, leg: int, f: Callable[[object], "Tensor"], width: int | None = None) -> "Tensor":
        """Apply the linear map ``f`` (given on basis keys) to one leg.

        ``f`` may return tensors of any arity m; the leg is replaced by m legs,
        so coproducts applied to a leg work the same way as linear maps.
        ``width`` fixes m for the arity of a zero result.
        """
        if not self._terms:
            return Tensor.zero(self.arity - 1 + (1 if width is None else width))
        if not 0 <= leg < self.arity:
            raise DimensionError(f"leg {leg} out of range for arity {self.arity}")
        out: dict[tuple, Fraction] = {}
        width = None
        cache: dict = {}
        for key, c in self._terms.items():
            x = key[leg]
            img = cache.get(x)
            if img is None:
                img = cache[x] = f(x)
            if width is None and img._terms:
                width = img.arity
            elif img._terms and img.arity != width:
                raise DimensionError("leg map returned tensors of mixed arity")
            head, tail = key[:leg], key[leg + 1:]
            for k2, c2 in img._terms.items():
                nk = head + k2 + tail
                out[nk] = out.get(nk, 0) + c * c2
        if width is None:
            return Tensor.zero(self.arity)
        return Tensor._raw(out, self.arity - 1 + width)


def vec(*pairs) -> Tensor:
    """Vector from ``(index, coeff)`` pairs, e.g. ``vec((0, 1), (1, -2))``."""
    return Tensor([((i,), c) for i, c in pairs], arity=1)


def basis_tensor(*indices) -> Tensor:
    return Tensor.unit(tuple(indices))


def flip(t: Tensor) -> Tensor:
    """τ(x⊗y) = y⊗x."""
    if t and t.arity != 2:
        raise DimensionError("flip needs a 2-tensor")
    return t.permute((1, 0))


def flip13(t: Tensor) -> Tensor:
    if t and t.arity != 3:
        raise DimensionError("flip13 needs a 3-tensor")
    return t.permute((2, 1, 0))


def flip23(t: Tensor) -> Tensor:
    if t and t.arity != 3:
        raise DimensionError("flip23 needs a 3-tensor")
    return t.permute((0, 2, 1))


def flip12(t: Tensor) -> Tensor:
    if t and t.arity != 3:
        raise DimensionError("flip12 needs a 3-tensor")
    return t.permute((1, 0, 2))


def _as_vector_table(space: BasisSpace, raw, arity: int) -> dict:
    table = {}
    for key, value in dict(raw).items():
        key = tuple(key) if isinstance(key, tuple) else (key,)
        for i in key:
            space.check_index(i)
        t = value if isinstance(value, Tensor) else Tensor(
            {(k if isinstance(k, tuple) else (k,)): c for k, c in dict(value).items()},
            arity=arity)
        for k in t.keys():
            for i in k:
                space.check_index(i)
        if t:
            table[key] = t
    return dict(sorted(table.items()))


class BilinearOp:
    """A bilinear product on ``space`` given by structure constants.

    ``table`` maps ``(i, j)`` to the vector ``e_i * e_j``; missing pairs are
    zero products.
    """

    def __init__(self, space: BasisSpace, table: Mapping | None = None, name: str = ""):
        self.space = space
        self.name = name
        self.table: dict[tuple[int, int], Tensor] = _as_vector_table(space, table or {}, 1)
        self._zero = Tensor.zero(1)

    @classmethod
    def from_function(cls, space, f: Callable[[int, int], Tensor], name=""):
        n = space.dim
        return cls(space, {(i, j): f(i, j) for i in range(n) for j in range(n)}, name)

    def mul(self, i, j) -> Tensor:
        """Product of basis elements ``e_i * e_j``."""
        return self.table.get((i, j), self._zero)

    def __call__(self, u: Tensor, v: Tensor) -> Tensor:
        if u.arity != 1 or v.arity != 1:
            raise DimensionError("operations act on vectors")
        out: dict = {}
        for (i,), a in u.items():
            self.space.check_index(i)
            for (j,), b in v.items():
                self.space.check_index(j)
                for k, c in self.mul(i, j).items():
                    out[k] = out.get(k, 0) + a * b * c
        return Tensor._raw(out, 1)

    def left(self, a) -> Callable[[int], Tensor]:
        """L(a): x ↦ a * x, as a map on basis indices."""
        if isinstance(a, Tensor):
            return lambda x: self(a, Tensor.unit((x,)))
        return lambda x: self.mul(a, x)

    def right(self, b) -> Callable[[int], Tensor]:
        """R(b): x ↦ x * b."""
        if isinstance(b, Tensor):
            return lambda x: self(Tensor.unit((x,)), b)
        return lambda x: self.mul(x, b)

    def constants(self):
        for (i, j), v in self.table.items():
            for (k,), c in v.items():
                yield (i, j, k), c

    def is_zero(self) -> bool:
        return not self.table

    def _combine(self, other: "BilinearOp", sign: int) -> "BilinearOp":
        if other.space.dim != self.space.dim:
            raise DimensionError("operations live on different spaces")
        keys = set(self.table) | set(other.table)
        return BilinearOp(self.space, {k: self.mul(*k) + sign * other.mul(*k) for k in keys})

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __mul__(self, c):
        return BilinearOp(self.space, {k: v * c for k, v in self.table.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def opposite(self) -> "BilinearOp":
        """The product (a, b) ↦ b * a."""
        return BilinearOp(self.space, {(j, i): v for (i, j), v in self.table.items()})

    def with_constant(self, i, j, k, value) -> "BilinearOp":
        """Copy with the coefficient of e_k in e_i * e_j replaced."""
        table = dict(self.table)
        old = self.mul(i, j)
        table[(i, j)] = old + Tensor.unit((k,), scalar(value) - old[(k,)])
        return BilinearOp(self.space, table, self.name)

    def __eq__(self, other):
        if not isinstance(other, BilinearOp):
            return NotImplemented
        return self.space.dim == other.space.dim and self.table == other.table

    def __hash__(self):
        return hash(tuple(self.table.items()))

    def __repr__(self):
        return f"BilinearOp({self.space.name}, {len(self.table)} nonzero products)"


class CoOp:
    """A linear map V → V⊗V, ``table[i]`` being the image of ``e_i``."""

    def __init__(self, space: BasisSpace, table: Mapping | None = None, name: str = ""):
        self.space = space
        self.name = name
        raw = {}
        for i, v in dict(table or {}).items():
            i = i[0] if isinstance(i, tuple) else i
            raw[(i,)] = v
        self.table: dict[int, Tensor] = {k[0]: v for k, v in _as_vector_table(space, raw, 2).items()}
        self._zero = Tensor.zero(2)

    @classmethod
    def from_function(cls, space, f: Callable[[int], Tensor], name=""):
        return cls(space, {i: f(i) for i in range(space.dim)}, name)

    def image(self, i) -> Tensor:
        return self.table.get(i, self._zero)

    def __call__(self, u: Tensor) -> Tensor:
        if u.arity != 1:
            raise DimensionError("co-operations act on vectors")
        out = Tensor.zero(2)
        for (i,), a in u.items():
            self.space.check_index(i)
            out = out + self.image(i) * a
        return out

    def constants(self):
        for i, t in self.table.items():
            for (j, k), c in t.items():
                yield (i, j, k), c

    def is_zero(self) -> bool:
        return not self.table

    def flipped(self) -> "CoOp":
        """τ∘c."""
        return CoOp(self.space, {i: flip(t) for i, t in self.table.items()})

    def _combine(self, other, sign):
        if other.space.dim != self.space.dim:
            raise DimensionError("co-operations live on different spaces")
        keys = set(self.table) | set(other.table)
        return CoOp(self.space, {i: self.image(i) + sign * other.image(i) for i in keys})

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __mul__(self, c):
        return CoOp(self.space, {i: t * c for i, t in self.table.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def with_constant(self, i, j, k, value) -> "CoOp":
        table = dict(self.table)
        old = self.image(i)
        table[i] = old + Tensor.unit((j, k), scalar(value) - old[(j, k)])
        return CoOp(self.space, table, self.name)

    def __eq__(self, other):
        if not isinstance(other, CoOp):
            return NotImplemented
        return self.space.dim == other.space.dim and self.table == other.table

    def __hash__(self):
        return hash(tuple(self.table.items()))

    def __repr__(self):
        return f"CoOp({self.space.name}, {len(self.table)} nonzero images)"


@dataclass(frozen=True)
class FormDef:
    """Bilinear form given by its Gram matrix ``matrix[i][j] = (e_i, e_j)``.

    ``grading_shift`` is the integer m of a graded form, for which
    (B_i, B_j) = 0 unless i + j + m = 0.
    """

    space: BasisSpace
    matrix: tuple
    grading_shift: int | None = None
    nondegenerate: bool = field(default=False, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(scalar(c) for c in row) for row in self.matrix)
        n = self.space.dim
        if len(rows) != n or any(len(r) != n for r in rows):
            raise DimensionError(f"form on {self.space.name} needs a {n}x{n} matrix")
        object.__setattr__(self, "matrix", rows)
        if self.nondegenerate and self.det() == 0:
            raise ValueError(f"form on {self.space.name} is degenerate")

    def entry(self, i, j) -> Fraction:
        return self.matrix[i][j]

    def __call__(self, u: Tensor, v: Tensor) -> Fraction:
        total = Fraction(0)
        for (i,), a in u.items():
            row = self.matrix[i]
            for (j,), b in v.items():
                total += a * b * row[j]
        return total

    def det(self) -> Fraction:
        from .linalg import det

        return det(self.matrix)

    def is_nondegenerate(self) -> bool:
        return self.det() != 0

    def is_symmetric(self) -> bool:
        n = self.space.dim
        return all(self.matrix[i][j] == self.matrix[j][i] for i in range(n) for j in range(n))

    def is_skew(self) -> bool:
        n = self.space.dim
        return all(self.matrix[i][j] == -self.matrix[j][i] for i in range(n) for j in range(n))

    def scaled(self, c) -> "FormDef":
        c = scalar(c)
        return FormDef(self.space, tuple(tuple(c * x for x in row) for row in self.matrix),
                       self.grading_shift)


def dualize_op(op: BilinearOp) -> CoOp:
    """Transpose of a product: ⟨Δ(f), u⊗v⟩ = ⟨f, u * v⟩ on the dual space."""
    images: dict[int, dict] = {}
    for (i, j, k), c in op.constants():
        images.setdefault(k, {})[(i, j)] = c
    return CoOp(op.space.dual(), images)


def dualize_coop(c: CoOp) -> BilinearOp:
    """Transpose of a coproduct: ⟨f * g, v⟩ = ⟨f⊗g, c(v)⟩ on the dual space."""
    table: dict[tuple[int, int], dict] = {}
    for (k, i, j), v in c.constants():
        table.setdefault((i, j), {})[(k,)] = v
    return BilinearOp(c.space.dual(), table)


_SLOTS = {"12": (0, 1), "13": (0, 2), "23": (1, 2)}


def slot_product(op, r: Tensor, s: Tensor, slots: tuple[str, str]) -> Tensor:
    """Place ``r`` on one pair of legs of V⊗V⊗V and ``s`` on another.

    The leg the two pairs share receives ``(r-factor) * (s-factor)``.  With
    r = Σ x_i⊗y_i and s = Σ x'_j⊗y'_j this gives, for example,
    ("12", "13") ↦ Σ x_i*x'_j ⊗ y_i ⊗ y'_j and
    ("23", "13") ↦ Σ x'_j ⊗ x_i ⊗ y_i*y'_j.
    ``op`` is a BilinearOp or any callable on pairs of basis keys.
    """
    mul = op.mul if isinstance(op, BilinearOp) else op
    try:
        first, second = (_SLOTS[str(x)] for x in slots)
    except (KeyError, ValueError, TypeError):
        raise ValueError(f"unsupported slot pair {slots!r}") from None
    shared = set(first) & set(second)
    if first == second or len(shared) != 1:
        raise ValueError(f"unsupported slot pair {slots!r}")
    if r.arity != 2 and r or s.arity != 2 and s:
        raise DimensionError("slot_product needs 2-tensors")
    (pos,) = shared
    r_other = first[1] if first[0] == pos else first[0]
    s_other = second[1] if second[0] == pos else second[0]
    r_at = first.index(pos)
    s_at = second.index(pos)
    out: dict = {}
    for rk, rc in r.items():
        for sk, sc in s.items():
            for (m,), mc in mul(rk[r_at], sk[s_at]).items():
                key = [None, None, None]
                key[pos] = m
                key[r_other] = rk[1 - r_at]
                key[s_other] = sk[1 - s_at]
                key = tuple(key)
                out[key] = out.get(key, 0) + rc * sc * mc
    return Tensor._raw(out, 3)


def bullet(t_left: Tensor, t_right: Tensor, right_dim: int | None = None) -> Tensor:
    """Interleave legs: (c_1⊗…⊗c_k) • (d_1⊗…⊗d_k) = (c_1⊗d_1)⊗…⊗(c_k⊗d_k).

    Without ``right_dim`` the combined keys are pairs ``(i, p)``; with it they
    are flattened to ``i * right_dim + p`` (lexicographic product basis).
    """
    if t_left and t_right and t_left.arity != t_right.arity:
        raise DimensionError(f"bullet of arities {t_left.arity} and {t_right.arity}")
    arity = t_left.arity if t_left else t_right.arity
    out: dict = {}
    for k1, c1 in t_left.items():
        for k2, c2 in t_right.items():
            if right_dim is None:
                key = tuple(zip(k1, k2))
            else:
                key = tuple(i * right_dim + p for i, p in zip(k1, k2))
            out[key] = out.get(key, 0) + c1 * c2
    return Tensor._raw(out, arity)


def multi_pair(form, t1: Tensor, t2: Tensor) -> Fraction:
    """Σ c1 c2 Π_l (a_l, b_l): the multilinear extension of a form.

    ``form`` is a FormDef or a callable on pairs of basis keys.
    """
    if t1 and t2 and t1.arity != t2.arity:
        raise DimensionError(f"pairing tensors of arity {t1.arity} and {t2.arity}")
    entry = form.entry if isinstance(form, FormDef) else form
    total = Fraction(0)
    for k1, c1 in t1.items():
        for k2, c2 in t2.items():
            p = c1 * c2
            for a, b in zip(k1, k2):
                p *= entry(a, b)
                if not p:
                    break
            total += p
    return total


def all_keys(dim: int, arity: int):
    return cartesian(range(dim), repeat=arity)
