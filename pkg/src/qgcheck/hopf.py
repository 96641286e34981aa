"""Finite quantum group models.

A model packages a finite-dimensional unital *-algebra together with a
coproduct, counit, antipode and involution, all stored as exact sparse
linear maps over a cyclotomic field.  The involution is antilinear, so we
store its linear part C and apply it as  a* = C(conj(a)).

Structural laws are verified by `validate_model`; the four canonical
twisted-multiplication maps (and their opposite/co-opposite variants) are
built by `galois` and inverted exactly by `check_cancellation`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ModelError, SingularMap
from .linalg import LinMap, Vec, apply_on_legs, det, inverse, solve_linear
from .report import Checker, CheckRecord
from .scalars import Cyc


@dataclass(frozen=True)
class QGModel:
    """Finite-dimensional unital quantum group model.

    Fields:
      name      display name
      order     cyclotomic order of the scalar field Q(zeta_order)
      dim       vector space dimension
      basis     basis labels, length dim
      unit      the element 1
      mult      multiplication A (x) A -> A
      coprod    coproduct A -> A (x) A
      counit    counit A -> scalars (codomain has no legs)
      antipode  antipode A -> A
      invol     linear part C of the involution, a* = C(conj a)
      positive  whether the invariant functional is expected to be a state
    """

    name: str
    order: int
    dim: int
    basis: tuple[str, ...]
    unit: Vec
    mult: LinMap
    coprod: LinMap
    counit: LinMap
    antipode: LinMap
    invol: LinMap
    positive: bool

    def __post_init__(self):
        d = self.dim
        A, AA = (d,), (d, d)
        shapes = {
            "mult": (self.mult, AA, A),
            "coprod": (self.coprod, A, AA),
            "counit": (self.counit, A, ()),
            "antipode": (self.antipode, A, A),
            "invol": (self.invol, A, A),
        }
        for label, (m, dom, cod) in shapes.items():
            if m.dom != dom or m.cod != cod:
                raise ModelError(
                    f"{self.name}: {label} has legs {m.dom}->{m.cod}, "
                    f"expected {dom}->{cod}")
        if self.unit.dims != A:
            raise ModelError(f"{self.name}: unit has legs {self.unit.dims}")
        if len(self.basis) != d or len(set(self.basis)) != d:
            raise ModelError(f"{self.name}: basis labels must be {d} distinct strings")
        object.__setattr__(self, "_memo", {})

    def _cached(self, key, build):
        memo = self._memo
        if key not in memo:
            memo[key] = build()
        return memo[key]

    # -- spaces and canonical maps ---------------------------------------

    @property
    def A(self) -> tuple[int, ...]:
        return (self.dim,)

    @property
    def AA(self) -> tuple[int, ...]:
        return (self.dim, self.dim)

    @property
    def idA(self) -> LinMap:
        return self._cached("idA", lambda: LinMap.identity(self.A))

    @property
    def flipA(self) -> LinMap:
        return self._cached("flipA", lambda: LinMap.flip(self.dim, self.dim))

    @property
    def unit_map(self) -> LinMap:
        """Scalars -> A, 1 |-> unit."""
        return self._cached(
            "unit_map", lambda: LinMap((), self.A, {0: dict(self.unit.data)}))

    @property
    def antipode_inv(self) -> LinMap:
        return self._cached("antipode_inv", lambda: inverse(self.antipode))

    # -- element helpers --------------------------------------------------

    def scalar(self, x) -> Cyc:
        if isinstance(x, Cyc):
            return x
        return Cyc.rational(Fraction(x), 1)

    def basis_vec(self, i: int) -> Vec:
        return Vec.basis(self.A, i)

    def basis_index(self, label: str) -> int:
        return self._cached("label_index", lambda: {
            lab: i for i, lab in enumerate(self.basis)})[label]

    def element(self, coeffs: dict[str, object]) -> Vec:
        data = {}
        for label, c in coeffs.items():
            v = self.scalar(c)
            if not v.is_zero():
                data[self.basis_index(label)] = v
        return Vec(self.A, data)

    def show(self, v: Vec) -> str:
        if v.is_zero():
            return "0"
        parts = []
        for i in sorted(v.data):
            c = v.data[i]
            if c == Cyc.one(1):
                parts.append(self.basis[i])
            else:
                parts.append(f"({c!r})*{self.basis[i]}")
        return " + ".join(parts)

    # -- operations -------------------------------------------------------

    def mul(self, a: Vec, b: Vec) -> Vec:
        return self.mult(a.tensor(b))

    def mul2(self, u: Vec, w: Vec) -> Vec:
        """Product of u, w in A (x) A: (a(x)b)(c(x)d) = ac (x) bd.

        Computed by applying mult to legs (0,2) and then (1,2) of the
        4-leg tensor, so the mult(x)mult matrix is never materialized.
        """
        t = u.tensor(w)
        t = apply_on_legs(self.mult, (0, 2), t)
        return apply_on_legs(self.mult, (1, 2), t)

    def lmul(self, a: Vec) -> LinMap:
        """Left multiplication by a as a matrix."""
        cols = {}
        for j in range(self.dim):
            col = self.mul(a, self.basis_vec(j))
            if col.data:
                cols[j] = dict(col.data)
        return LinMap(self.A, self.A, cols)

    def rmul(self, a: Vec) -> LinMap:
        cols = {}
        for j in range(self.dim):
            col = self.mul(self.basis_vec(j), a)
            if col.data:
                cols[j] = dict(col.data)
        return LinMap(self.A, self.A, cols)

    def bar(self, v: Vec) -> Vec:
        """Involution a |-> a*."""
        return self.invol(v.conj())

    def counit_of(self, v: Vec) -> Cyc:
        return self.counit(v).get(0)


# -- twisted multiplication maps -------------------------------------------


def _galois_four(mult: LinMap, coprod: LinMap) -> dict[str, LinMap]:
    d = mult.cod[0]
    i = LinMap.identity((d,))
    flip = LinMap.flip(d, d)
    return {
        # a(x)b |-> coprod(a)(b(x)1)
        "gl": (mult.tensor(i)) @ (i.tensor(flip)) @ (coprod.tensor(i)),
        # a(x)b |-> coprod(a)(1(x)b)
        "gr": (i.tensor(mult)) @ (coprod.tensor(i)),
        # a(x)b |-> (a(x)1)coprod(b)
        "rl": (mult.tensor(i)) @ (i.tensor(coprod)),
        # a(x)b |-> (1(x)a)coprod(b)
        "rr": (i.tensor(mult)) @ (flip.tensor(i)) @ (i.tensor(coprod)),
    }


def galois(model: QGModel) -> dict[str, LinMap]:
    """The four canonical maps gl, gr, rl, rr on A (x) A."""
    return model._cached(
        "galois", lambda: _galois_four(model.mult, model.coprod))


def galois_variants(model: QGModel) -> dict[str, LinMap]:
    """All sixteen twisted-multiplication maps.

    Keys are gl/gr/rl/rr with optional suffixes: _op swaps the product,
    _cop swaps the coproduct legs, _opcop does both.
    """
    def build():
        flip = model.flipA
        out = {}
        for op in (False, True):
            for cop in (False, True):
                mult = model.mult @ flip if op else model.mult
                coprod = flip @ model.coprod if cop else model.coprod
                tag = ("_op" if op else "") + ("_cop" if cop else "")
                for kind, m in _galois_four(mult, coprod).items():
                    out[kind + tag] = m
        return out
    return model._cached("galois_variants", build)


def check_cancellation(model: QGModel, variants: bool = True) -> list[CheckRecord]:
    """Verify that the twisted-multiplication maps are bijective.

    Each map is inverted exactly; a singular map is reported with a kernel
    witness.  Determinants are computed as a side record for the four
    basic maps.
    """
    ck = Checker(f"{model.name}.cancel")
    maps = galois_variants(model) if variants else galois(model)
    idAA = LinMap.identity(model.AA)
    for kind in sorted(maps):
        m = maps[kind]

        def build(m=m):
            return inverse(m) @ m - idAA

        ck.exact(kind, f"{kind} is bijective on A(x)A", build)
    for kind in ("gl", "gr", "rl", "rr"):

        def build_det(m=maps[kind]):
            return not det(m).is_zero()

        ck.exact(f"{kind}.det", f"det({kind}) != 0", build_det)
    return ck.records


# -- structural validation ---------------------------------------------------


def verify_counit_antipode(model: QGModel) -> list[CheckRecord]:
    """Counit and antipode laws, including their *-compatibility."""
    ck = Checker(f"{model.name}.hopf")
    m, d_, eps, S, C = (model.mult, model.coprod, model.counit,
                        model.antipode, model.invol)
    i, flip = model.idA, model.flipA
    g = galois(model)

    ck.exact("counit.left", "(eps(x)id)coprod = id",
             lambda: (eps.tensor(i)) @ d_ - i)
    ck.exact("counit.right", "(id(x)eps)coprod = id",
             lambda: (i.tensor(eps)) @ d_ - i)
    ck.exact("counit.unit", "eps(1) = 1",
             lambda: model.counit_of(model.unit) - Cyc.one(1))
    ck.exact("counit.mult", "eps(ab) = eps(a)eps(b)",
             lambda: eps @ m - eps.tensor(eps))
    ck.exact("counit.star", "eps(a*) = conj(eps(a))",
             lambda: eps @ C - eps.conj())

    ck.exact("antipode.left", "m(S(x)id)(coprod(a)(1(x)b)) = eps(a)b",
             lambda: m @ (S.tensor(i)) @ g["gr"] - eps.tensor(i))
    ck.exact("antipode.right", "m(id(x)S)((a(x)1)coprod(b)) = a eps(b)",
             lambda: m @ (i.tensor(S)) @ g["rl"] - i.tensor(eps))
    ck.exact("antipode.unit", "S(1) = 1",
             lambda: S(model.unit) - model.unit)
    ck.exact("antipode.counit", "eps(S(a)) = eps(a)",
             lambda: eps @ S - eps)
    ck.exact("antipode.anti-mult", "S(ab) = S(b)S(a)",
             lambda: S @ m - m @ flip @ (S.tensor(S)))
    ck.exact("antipode.anti-comult", "coprod(S(a)) = flip (S(x)S) coprod(a)",
             lambda: d_ @ S - flip @ (S.tensor(S)) @ d_)
    ck.exact("antipode.bijective", "S is bijective",
             lambda: model.antipode_inv @ S - i)
    ck.exact("antipode.star", "S(a*) = (S^-1(a))*",
             lambda: S @ C - C @ model.antipode_inv.conj())
    return ck.records


def validate_model(model: QGModel, deep: bool = True) -> list[CheckRecord]:
    """All structural laws of a model.

    With deep=True this includes the counit/antipode laws and the
    bijectivity of the four canonical twisted-multiplication maps.
    """
    ck = Checker(f"{model.name}.struct")
    m, d_, C = model.mult, model.coprod, model.invol
    i, flip = model.idA, model.flipA
    u = model.unit_map

    ck.exact("alg.assoc", "(ab)c = a(bc)",
             lambda: m @ (m.tensor(i)) - m @ (i.tensor(m)))
    ck.exact("alg.unit-left", "1a = a", lambda: m @ (u.tensor(i)) - i)
    ck.exact("alg.unit-right", "a1 = a", lambda: m @ (i.tensor(u)) - i)

    ck.exact("coalg.coassoc", "(coprod(x)id)coprod = (id(x)coprod)coprod",
             lambda: (d_.tensor(i)) @ d_ - (i.tensor(d_)) @ d_)
    ck.exact("coalg.unit", "coprod(1) = 1(x)1",
             lambda: d_(model.unit) - model.unit.tensor(model.unit))

    def coprod_mult_diff():
        # coprod(ab) = coprod(a)coprod(b), checked pair by pair so the
        # product on A(x)A never becomes a d^4-column matrix.
        worst = Vec.zero(model.AA)
        for p in range(model.dim):
            dp = d_(model.basis_vec(p))
            for q in range(model.dim):
                lhs = d_(model.mul(model.basis_vec(p), model.basis_vec(q)))
                rhs = model.mul2(dp, d_(model.basis_vec(q)))
                diff = lhs - rhs
                if diff.data and diff.max_abs() > worst.max_abs():
                    worst = diff
        return worst

    ck.exact("coalg.mult-hom", "coprod(ab) = coprod(a)coprod(b)",
             coprod_mult_diff)

    ck.exact("invol.involutive", "(a*)* = a", lambda: C @ C.conj() - i)
    ck.exact("invol.anti-mult", "(ab)* = b* a*",
             lambda: C @ m.conj() - m @ (C.tensor(C)) @ flip)
    ck.exact("invol.unit", "1* = 1", lambda: model.bar(model.unit) - model.unit)
    ck.exact("invol.coprod", "coprod(a*) = (*(x)*)coprod(a)",
             lambda: d_ @ C - (C.tensor(C)) @ d_.conj())

    records = ck.records
    if deep:
        records = records + verify_counit_antipode(model)
        records = records + check_cancellation(model, variants=False)
    return records


# -- derived structure maps ---------------------------------------------------


def solve_antipode(model: QGModel) -> LinMap:
    """Recover the antipode from multiplication and coproduct alone.

    Inverting a(x)b |-> coprod(a)(1(x)b) and composing with a |-> a(x)1
    and eps(x)id yields S; raises SingularMap if the model has none.
    """
    gr = galois(model)["gr"]
    return (model.counit.tensor(model.idA)) @ inverse(gr) \
        @ (model.idA.tensor(model.unit_map))


def solve_counit(model: QGModel) -> LinMap:
    """Recover the counit as the unique functional with (eps(x)id)coprod = id."""
    d = model.dim
    # unknowns: eps_j; equations indexed by (i, k):
    #   sum_j coprod(e_i)[(j, k)] eps_j = delta_{ik}
    entries = []
    for i_ in range(d):
        col = model.coprod.column(i_)
        for jk, v in col.items():
            j, k = divmod(jk, d)
            entries.append((i_ * d + k, j, v))
    system = LinMap.from_entries((d,), (d, d), entries)
    rhs = Vec((d, d), {i_ * d + i_: Cyc.one(1) for i_ in range(d)})
    sol, ker = solve_linear(system, rhs)
    if sol is None:
        raise ModelError(f"{model.name}: no counit satisfies the coproduct law")
    if ker:
        raise ModelError(f"{model.name}: counit is not unique (kernel dim {len(ker)})")
    return LinMap.functional(model.A, [sol.get(j) for j in range(d)])
