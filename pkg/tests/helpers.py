"""Random structures, change of basis and dense brute-force oracles for tests."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from novikovkit import linalg
from novikovkit.checks import check_pre_novikov, check_right_novikov_dialgebra
from novikovkit.core import BasisSpace, BilinearOp, CoOp, Tensor, vec

ZERO = Fraction(0)


def space(n: int, name: str = "A") -> BasisSpace:
    return BasisSpace(name, tuple(f"e{i + 1}" for i in range(n)))


def random_op(rng: random.Random, sp: BasisSpace, density=0.5, values=(-2, -1, 1, 2)):
    n = sp.dim
    table = {}
    for i, j in product(range(n), repeat=2):
        terms = {(k,): rng.choice(values) for k in range(n) if rng.random() < density}
        if terms:
            table[(i, j)] = Tensor(terms, 1)
    return BilinearOp(sp, table)


def random_coop(rng: random.Random, sp: BasisSpace, density=0.3, values=(-2, -1, 1, 2)):
    n = sp.dim
    table = {}
    for i in range(n):
        terms = {(j, k): rng.choice(values) for j, k in product(range(n), repeat=2)
                 if rng.random() < density}
        if terms:
            table[i] = Tensor(terms, 2)
    return CoOp(sp, table)


def random_tensor(rng: random.Random, n: int, arity=2, density=0.4, values=(-2, -1, 1, 2)):
    return Tensor({k: rng.choice(values) for k in product(range(n), repeat=arity)
                   if rng.random() < density}, arity)


def random_invertible(rng: random.Random, n: int, values=(-1, 0, 1, 2)):
    while True:
        m = [[Fraction(rng.choice(values)) for _ in range(n)] for _ in range(n)]
        if linalg.det(m) != 0:
            return m


def _image(m, t: Tensor) -> list:
    """Coordinates of a vector after applying matrix m."""
    n = len(m)
    out = [ZERO] * n
    for (k,), c in t.items():
        for r in range(n):
            out[r] += m[r][k] * c
    return out


def transport_op(op: BilinearOp, p) -> BilinearOp:
    """The same product written in the basis f_i = Σ_k p[k][i] e_k."""
    n = op.space.dim
    pinv = linalg.inverse(p)
    table = {}
    for i, j in product(range(n), repeat=2):
        prod = Tensor.zero(1)
        for k, l in product(range(n), repeat=2):
            c = p[k][i] * p[l][j]
            if c:
                prod = prod + op.mul(k, l) * c
        coords = _image(pinv, prod)
        table[(i, j)] = Tensor({(k,): c for k, c in enumerate(coords)}, 1)
    return BilinearOp(op.space, table)


def transport_coop(c: CoOp, p) -> CoOp:
    """The same coproduct in the basis f_i = Σ_k p[k][i] e_k."""
    n = c.space.dim
    pinv = linalg.inverse(p)
    table = {}
    for i in range(n):
        img = Tensor.zero(2)
        for k in range(n):
            if p[k][i]:
                img = img + c.image(k) * p[k][i]
        out = {}
        for (j, k), v in img.items():
            for a in range(n):
                for b in range(n):
                    w = pinv[a][j] * pinv[b][k] * v
                    if w:
                        out[(a, b)] = out.get((a, b), 0) + w
        table[i] = Tensor(out, 2)
    return CoOp(c.space, table)


def ex1_ops():
    sp = space(2)
    lhd = BilinearOp(sp, {(0, 0): vec((0, 1)), (0, 1): vec((1, 1)), (1, 0): vec((1, 1))})
    return lhd, BilinearOp(sp)


def sparse_pre_novikov(rng: random.Random, n: int, tries=200):
    """Random pairs with one or two nonzero constants each, kept when pre-Novikov."""
    sp = space(n)
    for _ in range(tries):
        pair = []
        for _ in range(2):
            table = {}
            for _ in range(rng.choice((0, 1, 2))):
                i, j, k = (rng.randrange(n) for _ in range(3))
                table[(i, j)] = Tensor({(k,): rng.choice((-1, 1, 2))}, 1)
            pair.append(BilinearOp(sp, table))
        if check_pre_novikov(*pair).passed and not (pair[0].is_zero() and pair[1].is_zero()):
            return tuple(pair)
    return None


def random_pre_novikov_instances(seed: int, count: int, bases):
    """Pre-Novikov pairs from random changes of basis and rescalings of the
    given pairs plus sparse random pairs that pass the checker."""
    rng = random.Random(seed)
    out, seen = [], set()
    while len(out) < count:
        if rng.random() < 0.3:
            pair = sparse_pre_novikov(rng, rng.choice((2, 3)))
            if pair is None:
                continue
        else:
            lhd, rhd = rng.choice(bases)
            p = random_invertible(rng, lhd.space.dim)
            lam = Fraction(rng.choice((1, -1, 2, -3)), rng.choice((1, 2)))
            pair = (transport_op(lhd, p) * lam, transport_op(rhd, p) * lam)
        key = (pair[0], pair[1])
        if key in seen:
            continue
        seen.add(key)
        out.append(pair)
    return out


def random_dialgebras(seed: int, count: int, bases):
    """Right Novikov dialgebras (⊣, ⊢) by change of basis of the given ones."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        dashv, vdash = rng.choice(bases)
        p = random_invertible(rng, dashv.space.dim)
        pair = (transport_op(dashv, p), transport_op(vdash, p))
        assert check_right_novikov_dialgebra(*pair).passed
        out.append(pair)
    return out


# ------------------------------------------------------------ dense oracles

def dense_op(op: BilinearOp):
    n = op.space.dim
    return [[[op.mul(i, j).get((k,)) for k in range(n)] for j in range(n)] for i in range(n)]


def dense_coop(c: CoOp):
    n = c.space.dim
    return [[[c.image(i).get((j, k)) for k in range(n)] for j in range(n)] for i in range(n)]


def dense_tensor2(t: Tensor, n: int):
    return [[t.get((j, k)) for k in range(n)] for j in range(n)]


class Dense:
    """Brute-force evaluation of the primitives appearing in the compatibility
    conditions, by explicit index sums."""

    def __init__(self, n, ops: dict, coops: dict):
        self.n = n
        self.ops = ops
        self.coops = coops

    def unit(self, i):
        return [Fraction(int(k == i)) for k in range(self.n)]

    def mul(self, sym, u, v):
        P, n = self.ops[sym], self.n
        return [sum((u[i] * v[j] * P[i][j][k] for i in range(n) for j in range(n)), ZERO)
                for k in range(n)]

    def cop(self, sym, u, flipped=False):
        D, n = self.coops[sym], self.n
        m = [[sum((u[i] * D[i][j][k] for i in range(n)), ZERO) for k in range(n)]
             for j in range(n)]
        return self.tau(m) if flipped else m

    def tau(self, m):
        n = self.n
        return [[m[k][j] for k in range(n)] for j in range(n)]

    def lmat(self, sym, a):
        """Matrix of x ↦ a·x."""
        P, n = self.ops[sym], self.n
        return [[P[a][x][k] for x in range(n)] for k in range(n)]

    def rmat(self, sym, b):
        """Matrix of x ↦ x·b."""
        P, n = self.ops[sym], self.n
        return [[P[x][b][k] for x in range(n)] for k in range(n)]

    def comb(self, *pairs):
        n = self.n
        out = [[ZERO] * n for _ in range(n)]
        for c, m in pairs:
            for r in range(n):
                for s in range(n):
                    out[r][s] += c * m[r][s]
        return out

    def on_left(self, m, t):
        """(m⊗id)t."""
        n = self.n
        return [[sum((m[j2][j] * t[j][k] for j in range(n)), ZERO) for k in range(n)]
                for j2 in range(n)]

    def on_right(self, m, t):
        """(id⊗m)t."""
        n = self.n
        return [[sum((m[k2][k] * t[j][k] for k in range(n)), ZERO) for k2 in range(n)]
                for j in range(n)]

    def add(self, *pairs):
        return self.comb(*pairs)


def lfd_oracle(d: Dense, cid: str, a: int, b: int):
    """Residual (left minus right) of a pre-Novikov bialgebra condition,
    transcribed independently from the package's term tables."""
    A, B = d.unit(a), d.unit(b)

    def tal(x):
        return d.cop("α", x, True)

    def al(x):
        return d.cop("α", x)

    def be(x):
        return d.cop("β", x)

    def tbe(x):
        return d.cop("β", x, True)

    L, R = d.lmat, d.rmat
    circ_ab = d.mul("∘", A, B)
    if cid == "pnb-1":
        lhs = d.add((1, tal(circ_ab)), (1, be(circ_ab)))
        tb = d.add((1, tal(B)), (1, be(B)))
        ta2 = d.add((2, tal(A)), (1, be(A)))
        rhs = d.add((1, d.on_left(d.comb((1, L("▷", a)), (2, R("◁", a))), tb)),
                    (1, d.on_right(L("∘", a), tb)),
                    (1, d.on_right(R("∘", b), ta2)),
                    (-1, d.on_left(R("◁", b), tal(A))))
    elif cid == "pnb-2":
        ba = d.mul("∘", B, A)
        lhs = d.add((1, tal(circ_ab)), (-1, tal(ba)))
        ma = d.comb((1, L("▷", a)), (1, R("◁", a)))
        mb = d.comb((1, L("▷", b)), (1, R("◁", b)))
        rhs = d.add((1, d.on_left(ma, tal(B))), (1, d.on_right(L("∘", a), tal(B))),
                    (-1, d.on_left(mb, tal(A))), (-1, d.on_right(L("∘", b), tal(A))))
    elif cid == "pnb-3":
        arg = [x + y for x, y in zip(d.mul("▷", A, B), d.mul("◁", B, A))]
        lhs = d.add((1, al(arg)), (1, be(arg)))
        ta2 = d.add((2, tal(A)), (1, be(A)))
        abb = d.add((1, al(B)), (1, be(B)))
        rhs = d.add((1, d.on_right(d.comb((1, R("▷", b)), (1, L("◁", b))), ta2)),
                    (-1, d.on_left(L("◁", b), al(A))),
                    (1, d.on_left(d.comb((1, L("▷", a)), (2, R("◁", a))), abb)),
                    (1, d.on_right(d.comb((1, L("▷", a)), (1, R("◁", a))), abb)))
    elif cid == "pnb-4":
        arg = d.mul("◁", B, A)
        lhs = d.add((1, al(arg)), (1, be(arg)), (-1, tal(arg)), (-1, tbe(arg)))
        rhs = d.add((1, d.on_right(L("◁", b), d.add((1, tal(A)), (1, be(A))))),
                    (-1, d.on_left(L("◁", b), d.add((1, al(A)), (1, tbe(A))))),
                    (1, d.on_right(R("◁", a), d.add((1, al(B)), (1, be(B))))),
                    (-1, d.on_left(R("◁", a), d.add((1, tal(B)), (1, tbe(B))))))
    elif cid == "pnb-5":
        ta = d.add((1, tal(A)), (1, be(A)))
        tb = d.add((1, tal(B)), (1, be(B)))
        lhs = d.add((1, d.on_right(R("∘", b), ta)), (-1, d.on_left(R("◁", b), ta)))
        rhs = d.add((1, d.on_right(R("∘", a), tb)), (-1, d.on_left(R("◁", a), tb)))
    elif cid == "pnb-6":
        lhs = tal(circ_ab)
        rhs = d.add((1, d.on_right(R("∘", b), tal(A))),
                    (1, d.on_left(d.comb((1, L("▷", a)), (1, R("◁", a))),
                                  d.add((1, tal(B)), (1, be(B))))))
    elif cid == "pnb-7":
        mb = d.comb((1, R("▷", b)), (1, L("◁", b)))
        ma = d.comb((1, L("▷", a)), (1, R("◁", a)))
        lhs = d.on_right(mb, tal(A))
        rhs = d.add((1, d.on_left(mb, al(A))),
                    (1, d.on_right(ma, d.add((1, tal(B)), (1, tbe(B))))),
                    (-1, d.on_left(ma, d.add((1, al(B)), (1, be(B))))))
    elif cid == "pnb-8":
        arg = d.mul("◁", B, A)
        lhs = d.add((1, al(arg)), (1, be(arg)))
        rhs = d.add((1, d.on_right(d.comb((1, R("▷", b)), (1, L("◁", b))),
                                   d.add((1, tal(A)), (1, be(A))))),
                    (1, d.on_left(R("◁", a), d.add((1, al(B)), (1, be(B))))))
    else:
        raise KeyError(cid)
    return d.add((1, lhs), (-1, rhs))


def plb_oracle(d: Dense, cid: str, a: int, b: int):
    A, B = d.unit(a), d.unit(b)
    L, R = d.lmat, d.rmat

    def de(x, flipped=False):
        return d.cop("δ", x, flipped)

    ab = d.mul("∘", A, B)
    if cid == "plb-1":
        dtb = d.add((1, de(B)), (-1, de(B, True)))
        return d.add((1, de(ab)), (-1, de(ab, True)),
                     (-1, d.on_left(L("∘", a), dtb)), (-1, d.on_right(L("∘", a), dtb)),
                     (-1, d.on_right(R("∘", b), de(A))),
                     (1, d.on_left(R("∘", b), de(A, True))))
    ba = d.mul("∘", B, A)
    return d.add((1, de(ab)), (-1, de(ba)),
                 (-1, d.on_right(d.comb((1, R("∘", b)), (-1, L("∘", b))), de(A))),
                 (-1, d.on_right(d.comb((1, L("∘", a)), (-1, R("∘", a))), de(B))),
                 (-1, d.on_left(L("∘", a), de(B))),
                 (1, d.on_left(L("∘", b), de(A))))


def slot_oracle(mul, r: Tensor, s: Tensor, slots, n: int) -> Tensor:
    """r and s embedded in V⊗V⊗V as dense 3-arrays, with the product taken
    componentwise on the shared leg."""
    first, second = slots
    out = {}
    for key, rc in r.items():
        for skey, sc in s.items():
            r_legs = {int(first[0]) - 1: key[0], int(first[1]) - 1: key[1]}
            s_legs = {int(second[0]) - 1: skey[0], int(second[1]) - 1: skey[1]}
            shared = (set(r_legs) & set(s_legs)).pop()
            for (m,), mc in mul(r_legs[shared], s_legs[shared]).items():
                full = [None] * 3
                for leg in range(3):
                    if leg == shared:
                        full[leg] = m
                    elif leg in r_legs:
                        full[leg] = r_legs[leg]
                    else:
                        full[leg] = s_legs[leg]
                full = tuple(full)
                out[full] = out.get(full, 0) + rc * sc * mc
    return Tensor(out, 3)
