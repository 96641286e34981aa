"""Morphisms between models and closed quantum subgroups.

A morphism from a model onto a second model is a unital *-algebra map pi
that intertwines the coproducts; when pi is surjective the second model
plays the role of a closed quantum subgroup and pi is the restriction
map.  Counit and antipode compatibility then come for free, but both are
asserted here rather than assumed.

Every morphism induces a dual morphism pi_hat running the other way
between the convolution algebras, pinned down by the pairing identity
(pi_hat(x), a) = (x, pi(a)).  In shared coordinates, where the pairing
is (f, a) = phi(a f), this gives the closed form

    pi_hat = P_src^-1 o pi^T o P_tgt,   P[i, j] = phi(e_i e_j),

which is exact.  The module verifies the multiplier-level product
formulas for pi_hat, the conditional expectation
pi(pi_hat(x) u pi_hat(y)) = x pi(u) y, and the subgroup certificate:
composing pi_hat with the convolution representation of the large model
is an injective *-homomorphism, so the small convolution algebra sits
inside the large one with matching operator norms.

Everything is exact arithmetic except the representation-level records,
which run on the float GNS layer and are skipped (with the refusal
reason) for models outside that layer's standing assumptions.
"""

from dataclasses import dataclass

import numpy as np

from .duality import Duality, build_dual
from .errors import CheckFailure, ModelError, TierRefusal
from .hopf import QGModel
from .linalg import LinMap, kernel, rank
from .models import GroupTable, build_function_algebra, builtin
from .report import Checker, CheckRecord, ensure

TOL_IDENTITY = 1e-10
TOL_SPECTRAL = 1e-8
TOL_MULTIPLIER = 1e-9


@dataclass(frozen=True)
class QGMorphism:
    """A linear map pi from the source model onto the target model.

    The map is stored raw; validate_morphism checks the axioms.  A valid
    surjective pi presents the target as a closed quantum subgroup of
    the source.
    """

    source: QGModel
    target: QGModel
    pi: LinMap

    def __post_init__(self):
        if self.pi.dom != self.source.A or self.pi.cod != self.target.A:
            raise ModelError(
                f"morphism legs {self.pi.dom}->{self.pi.cod} do not match "
                f"{self.source.name} -> {self.target.name}")

    @property
    def label(self) -> str:
        return f"{self.source.name}->{self.target.name}"


@dataclass(frozen=True)
class DualMorphism:
    """The induced map pi_hat between convolution algebras.

    pi_hat goes from the dual of the target into the dual of the source,
    in shared coordinates, and satisfies (pi_hat(x), a) = (x, pi(a)).
    """

    morphism: QGMorphism
    source_duality: Duality
    target_duality: Duality
    pi_hat: LinMap


# -- constructions ---------------------------------------------------------

def identity_morphism(model: QGModel) -> QGMorphism:
    return QGMorphism(model, model, LinMap.identity(model.A))


def restriction_morphism(group: GroupTable, indices) -> QGMorphism:
    """Restriction of functions from a group to a subgroup.

    Builds both function algebras and the map delta_g |-> [g in H] delta_g;
    raises ModelError when the index set is not a subgroup.
    """
    sub, old = group.subgroup(indices)
    source = build_function_algebra(group)
    target = build_function_algebra(sub)
    one = source.scalar(1)
    entries = [(new, g, one) for new, g in enumerate(old)]
    pi = LinMap.from_entries(source.A, target.A, entries)
    return QGMorphism(source, target, pi)


def counit_morphism(model: QGModel) -> QGMorphism:
    """The map onto the trivial model given by the counit."""
    target = builtin("trivial")
    pi = model.counit.relabel(model.A, target.A)
    return QGMorphism(model, target, pi)


def compose_morphisms(outer: QGMorphism, inner: QGMorphism) -> QGMorphism:
    """outer o inner, defined when inner's target is outer's source."""
    mid, src = inner.target, outer.source
    if (mid.name, mid.dim) != (src.name, src.dim):
        raise ModelError(
            f"cannot compose: {inner.label} ends at {mid.name}, "
            f"{outer.label} starts at {src.name}")
    return QGMorphism(inner.source, outer.target, outer.pi @ inner.pi)


# -- morphism axioms -------------------------------------------------------

def _structure_records(ck: Checker, src: QGModel, tgt: QGModel, pi: LinMap):
    """Hopf *-algebra morphism axioms for pi: src -> tgt, all exact."""
    ck.exact("unital", "pi(1) = 1",
             lambda: pi(src.unit) - tgt.unit)
    ck.exact("multiplicative", "pi(ab) = pi(a) pi(b)",
             lambda: pi @ src.mult - tgt.mult @ pi.tensor(pi))
    ck.exact("star", "pi(a*) = pi(a)*",
             lambda: pi @ src.invol - tgt.invol @ pi.conj())
    ck.exact("coproduct", "coprod(pi(a)) = (pi (x) pi) coprod(a)",
             lambda: tgt.coprod @ pi - pi.tensor(pi) @ src.coprod)
    ck.exact("counit", "counit = counit o pi (automatic, asserted)",
             lambda: src.counit - tgt.counit @ pi)
    ck.exact("antipode", "S(pi(a)) = pi(S(a)) (automatic, asserted)",
             lambda: tgt.antipode @ pi - pi @ src.antipode)


def validate_morphism(mor: QGMorphism) -> list[CheckRecord]:
    """Check the morphism axioms plus surjectivity, all exact."""
    ck = Checker(f"{mor.label}.morphism")
    _structure_records(ck, mor.source, mor.target, mor.pi)

    def onto():
        r = rank(mor.pi)
        if r != mor.target.dim:
            raise CheckFailure(
                f"rank {r} < target dimension {mor.target.dim}")
        return True

    ck.exact("surjective", "pi maps onto the target", onto)
    return ck.records


# -- the dual morphism -----------------------------------------------------

def build_dual_morphism(mor: QGMorphism,
                        source_duality: Duality | None = None,
                        target_duality: Duality | None = None,
                        validate: bool = True) -> DualMorphism:
    """Construct pi_hat from (pi_hat(x), a) = (x, pi(a)).

    With (f, a) = phi(a f) the identity reads P_src pi_hat = pi^T P_tgt,
    solved exactly by the stored inverse pairing matrix.  With
    validate=True the morphism axioms are checked first and any failure
    raises.
    """
    if validate:
        ensure(validate_morphism(mor))
    sdd = source_duality or build_dual(mor.source, validate=False)
    tdd = target_duality or build_dual(mor.target, validate=False)
    pi_hat = sdd.haar.pmat_inv @ mor.pi.transpose() @ tdd.haar.pmat
    return DualMorphism(mor, sdd, tdd, pi_hat)


def check_dual_morphism(dm: DualMorphism) -> list[CheckRecord]:
    """Exact properties of pi_hat: pairing, Hopf axioms, multipliers.

    pi_hat is itself a morphism between the dual models (injective, not
    surjective), and its products with elements of the source algebra
    satisfy the closed multiplier formulas

      pi_hat(x) * u = sum phi_tgt(S^-1(pi(u_(1))) x) u_(2)
      u * pi_hat(x) = sum u_(1) phi_tgt(pi(delta S(u_(2))) x)
                    = sum u_(1) phi_tgt(S^-1(x) pi(u_(2))
                                        pi(delta^-1) delta_tgt)

    where products inside phi_tgt happen in the target algebra on shared
    coordinates and * is the source convolution.
    """
    mor = dm.morphism
    src, tgt, pi = mor.source, mor.target, mor.pi
    dg, dh = dm.source_duality.dual, dm.target_duality.dual
    haar_g, haar_h = dm.source_duality.haar, dm.target_duality.haar
    n, k = src.dim, tgt.dim
    ck = Checker(f"{mor.label}.dual")

    ck.exact("pairing", "(pi_hat(x), a) = (x, pi(a))",
             lambda: haar_g.pmat @ dm.pi_hat - pi.transpose() @ haar_h.pmat)
    _structure_records(ck, dh, dg, dm.pi_hat)

    id_g, id_h = src.idA, tgt.idA
    phi_h = haar_h.phi_of
    pi_basis = [pi(src.basis_vec(p)) for p in range(n)]

    def left_formula():
        vals = []
        for x in range(k):
            xv = tgt.basis_vec(x)
            vals.extend(phi_h(tgt.mul(tgt.antipode_inv(pi_basis[p]), xv))
                        for p in range(n))
        pair_first = LinMap.functional((k, n), vals)
        lhs = dg.mult @ dm.pi_hat.tensor(id_g)
        rhs = pair_first.tensor(id_g) @ id_h.tensor(src.coprod)
        return lhs - rhs

    ck.exact("multiplier-left",
             "pi_hat(x) * u = sum phi(S^-1(pi(u_(1))) x) u_(2)",
             left_formula)

    twisted = [pi(src.mul(haar_g.delta, src.antipode(src.basis_vec(q))))
               for q in range(n)]

    def right_formula():
        vals = []
        for q in range(n):
            vals.extend(phi_h(tgt.mul(twisted[q], tgt.basis_vec(x)))
                        for x in range(k))
        pair_second = LinMap.functional((n, k), vals)
        lhs = dg.mult @ id_g.tensor(dm.pi_hat)
        rhs = id_g.tensor(pair_second) @ src.coprod.tensor(id_h)
        return lhs - rhs

    ck.exact("multiplier-right",
             "u * pi_hat(x) = sum u_(1) phi(pi(delta S(u_(2))) x)",
             right_formula)

    tail = tgt.mul(pi(haar_g.delta_inv), haar_h.delta)

    def right_alt_formula():
        vals = []
        for q in range(n):
            for x in range(k):
                body = tgt.mul(tgt.antipode_inv(tgt.basis_vec(x)),
                               tgt.mul(pi_basis[q], tail))
                vals.append(phi_h(body))
        pair_second = LinMap.functional((n, k), vals)
        lhs = dg.mult @ id_g.tensor(dm.pi_hat)
        rhs = id_g.tensor(pair_second) @ src.coprod.tensor(id_h)
        return lhs - rhs

    ck.exact("multiplier-right-alt",
             "u * pi_hat(x) = sum u_(1) phi(S^-1(x) pi(u_(2)) "
             "pi(delta^-1) delta_tgt)",
             right_alt_formula)
    return ck.records


# -- expectation -----------------------------------------------------------

def check_expectation(dm: DualMorphism) -> list[CheckRecord]:
    """pi, read on convolution algebras, averages over the subgroup.

    The identity pi(pi_hat(x) * u * pi_hat(y)) = x * pi(u) * y is checked
    as one exact map identity on the triple tensor space.  The companion
    record documents that pi need not intertwine the convolution
    involutions: the outcome is reported, never required.
    """
    mor = dm.morphism
    dg, dh = dm.source_duality.dual, dm.target_duality.dual
    id_g, id_h = mor.source.idA, mor.target.idA
    ck = Checker(f"{mor.label}.expectation")

    def both_sides():
        lhs = (mor.pi @ dg.mult @ dg.mult.tensor(id_g)
               @ dm.pi_hat.tensor(id_g).tensor(dm.pi_hat))
        rhs = (dh.mult @ dh.mult.tensor(id_h)
               @ id_h.tensor(mor.pi).tensor(id_h))
        return lhs - rhs

    ck.exact("bimodule", "pi(pi_hat(x) * u * pi_hat(y)) = x * pi(u) * y",
             both_sides)

    holds = (mor.pi @ dg.invol - dh.invol @ mor.pi.conj()).is_zero()
    ck.skip("involution-caveat",
            "pi need not intertwine the convolution involutions",
            f"not required; here pi {'does' if holds else 'does not'}")
    return ck.records


# -- subgroup certificate --------------------------------------------------

def _rep_stack(mats) -> np.ndarray:
    return np.stack([m.reshape(-1) for m in mats], axis=1)


def certify_vaes(mor: QGMorphism, dm: DualMorphism,
                 gns_source=None, gns_target=None) -> list[CheckRecord]:
    """Certify the closed-subgroup embedding of convolution algebras.

    Exact records: pi_hat respects convolution products, adjoints and
    units; pi_hat has zero kernel; both pairing forms separate points;
    the evaluation functionals are preimage-independent, meaning
    counit(pi_hat(x) * v) = 0 for v in the kernel of pi.

    Float records ride on the GNS layer: the composite
    x |-> lambda_src(pi_hat(x)) is a unital injective *-homomorphism
    whose operator norms match those of lambda_tgt(x), and the
    functional identity counit_tgt(x * a) = counit_src(pi_hat(x) * b)
    holds for the minimal-norm preimage b of a.  When a model sits
    outside the GNS layer's standing assumptions those records are
    skipped with the refusal reason.
    """
    from .gns import build_gns

    src, tgt, pi = mor.source, mor.target, mor.pi
    dg, dh = dm.source_duality.dual, dm.target_duality.dual
    n, k = src.dim, tgt.dim
    ck = Checker(f"{mor.label}.vaes")

    ck.exact("dual-homomorphism", "pi_hat(x * y) = pi_hat(x) * pi_hat(y)",
             lambda: dm.pi_hat @ dh.mult
             - dg.mult @ dm.pi_hat.tensor(dm.pi_hat))
    ck.exact("dual-star", "pi_hat(x^#) = pi_hat(x)^#",
             lambda: dm.pi_hat @ dh.invol - dg.invol @ dm.pi_hat.conj())
    ck.exact("dual-unital", "pi_hat maps convolution unit to convolution unit",
             lambda: dm.pi_hat(dh.unit) - dg.unit)

    def injective():
        ker = kernel(dm.pi_hat)
        if ker:
            raise CheckFailure(
                f"kernel of pi_hat contains {dh.show(ker[0])}")
        return True

    ck.exact("injective", "pi_hat has zero kernel", injective)

    haar_g, haar_h = dm.source_duality.haar, dm.target_duality.haar
    ck.exact("l1-separation.source", "pairing form of the source is invertible",
             lambda: haar_g.pmat @ haar_g.pmat_inv - src.idA)
    ck.exact("l1-separation.target", "pairing form of the target is invertible",
             lambda: haar_h.pmat @ haar_h.pmat_inv - tgt.idA)

    ker_pi = kernel(pi)

    def preimage_free():
        for v in ker_pi:
            for x in range(k):
                val = src.counit_of(dg.mul(dm.pi_hat(tgt.basis_vec(x)), v))
                if not val.is_zero():
                    raise CheckFailure(
                        f"counit(pi_hat(e_{x}) * v) = {val!r} for kernel "
                        f"element v = {src.show(v)}")
        return True

    if ker_pi:
        ck.exact("preimage-independence",
                 "counit(pi_hat(x) * v) = 0 for v in ker(pi)", preimage_free)
    else:
        ck.skip("preimage-independence",
                "counit(pi_hat(x) * v) = 0 for v in ker(pi)",
                "pi is injective; preimages are unique")

    # Functional identity on minimal-norm preimages, float tier.
    pi_np = pi.to_numpy()
    pi_hat_np = dm.pi_hat.to_numpy()
    eps_g = src.counit.to_numpy().reshape(n)
    conv_g = dg.mult.to_numpy().reshape(n, n, n)

    def functional_identity():
        pinv = np.linalg.pinv(pi_np)
        worst, note = 0.0, None
        for a in range(k):
            av = tgt.basis_vec(a)
            b = pinv[:, a]
            lift = float(np.linalg.norm(pi_np @ b - np.eye(k)[:, a]))
            if lift > worst:
                worst, note = lift, f"preimage defect at basis {a}"
            for x in range(k):
                xv = tgt.basis_vec(x)
                lhs = complex(tgt.counit_of(dh.mul(xv, av)).to_complex())
                px = pi_hat_np @ xv.to_numpy()
                rhs = complex(eps_g @ np.einsum(
                    "kij,i,j->k", conv_g, px, b))
                gap = abs(lhs - rhs)
                if gap > worst:
                    worst, note = gap, f"(x, a) = ({x}, {a})"
        return worst, note

    ck.numeric("functional-identity",
               "counit(x * a) = counit(pi_hat(x) * b) for pi(b) = a",
               TOL_MULTIPLIER, functional_identity)

    # Representation-level records on the GNS layer.
    refusal = None
    try:
        gns_source = gns_source or build_gns(src)
        gns_target = gns_target or build_gns(tgt)
    except TierRefusal as e:
        refusal = str(e)

    rep_ids = ("represented", "represented-injective", "norm-transport")
    if refusal is not None:
        for check_id in rep_ids:
            ck.skip(check_id, "regular-representation record", refusal)
        return ck.records

    x_basis = [tgt.basis_vec(x) for x in range(k)]
    rep = [gns_source.conv_of(pi_hat_np @ xv.to_numpy()) for xv in x_basis]
    rep_tgt = [gns_target.conv_of(xv.to_numpy()) for xv in x_basis]

    def represented():
        worst = float(np.linalg.norm(
            gns_source.conv_of(pi_hat_np @ dh.unit.to_numpy())
            - np.eye(n)))
        for x in range(k):
            adj = gns_source.conv_of(pi_hat_np @ dh.bar(x_basis[x]).to_numpy())
            worst = max(worst, float(np.linalg.norm(
                adj - rep[x].conj().T)))
            for y in range(k):
                prod = gns_source.conv_of(
                    pi_hat_np @ dh.mul(x_basis[x], x_basis[y]).to_numpy())
                worst = max(worst, float(np.linalg.norm(
                    prod - rep[x] @ rep[y])))
        return worst

    ck.numeric("represented",
               "x |-> lambda(pi_hat(x)) is a unital *-homomorphism",
               TOL_IDENTITY, represented)

    def rep_rank():
        got = int(np.linalg.matrix_rank(_rep_stack(rep), tol=TOL_SPECTRAL))
        return float(k - got), f"represented rank {got} of {k}"

    ck.numeric("represented-injective",
               "lambda o pi_hat has full rank", TOL_IDENTITY, rep_rank)

    def norms():
        worst, note = 0.0, None
        for x in range(k):
            gap = abs(float(np.linalg.norm(rep[x], 2))
                      - float(np.linalg.norm(rep_tgt[x], 2)))
            if gap > worst:
                worst, note = gap, f"basis {x}"
        return worst, note

    ck.numeric("norm-transport",
               "operator norms of lambda(pi_hat(x)) and lambda(x) agree",
               TOL_SPECTRAL, norms)
    return ck.records


# -- functoriality ---------------------------------------------------------

def check_functoriality(inner: QGMorphism, outer: QGMorphism) -> list[CheckRecord]:
    """Duality is contravariant: identities and composites transport."""
    composed = compose_morphisms(outer, inner)
    dmi = build_dual_morphism(inner, validate=False)
    dmo = build_dual_morphism(outer, validate=False)
    dmc = build_dual_morphism(composed, validate=False,
                              source_duality=dmi.source_duality,
                              target_duality=dmo.target_duality)
    ck = Checker(f"{composed.label}.functorial")
    ck.exact("identity", "dual of the identity morphism is the identity",
             lambda: build_dual_morphism(
                 identity_morphism(inner.source), validate=False).pi_hat
             - inner.source.idA)
    ck.exact("compose", "(pi2 o pi1)^ = pi1^ o pi2^",
             lambda: dmc.pi_hat - dmi.pi_hat @ dmo.pi_hat)
    return ck.records
