"""Invariant functionals and the modular machinery they generate.

The left-invariant functional phi is found as the kernel of a linear
system, so its existence and uniqueness are computed facts rather than
inputs.  From phi we derive the right-invariant psi = phi o S, the modular
automorphism sigma, the modular element delta, the scaling constant mu
with phi(S^2 a) = mu phi(a), and the Gram matrix of the sesquilinear form
phi(a* b).  Positivity of that form is compared against the model's
declared tier; a mismatch is an error, never silently patched.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ModelError, SingularMap
from .hopf import QGModel
from .linalg import LinMap, Vec, inverse, kernel
from .report import Checker, CheckRecord
from .scalars import Cyc


@dataclass(frozen=True)
class HaarData:
    model: QGModel
    phi: LinMap          # left invariant, normalized
    psi: LinMap          # phi o S, right invariant
    pmat: LinMap         # P[i, j] = phi(e_i e_j)
    pmat_inv: LinMap
    sigma: LinMap        # phi(ab) = phi(b sigma(a))
    sigma_inv: LinMap
    sigma_prime: LinMap  # psi(ab) = psi(b sigma'(a))
    delta: Vec           # (phi (x) id)coprod(a) = phi(a) delta
    delta_inv: Vec
    mu: Cyc              # phi(S^2 a) = mu phi(a)
    nu: Cyc              # sigma(delta) = nu delta
    gram: LinMap         # G[i, j] = phi(e_i* e_j)
    gram_positive: bool

    def phi_of(self, v: Vec) -> Cyc:
        return self.phi(v).get(0)

    def psi_of(self, v: Vec) -> Cyc:
        return self.psi(v).get(0)


def _invariance_system(model: QGModel, side: str) -> LinMap:
    """Equations cutting out the invariant functionals.

    side="left":  (id (x) phi)coprod(a) = phi(a) 1 for every basis a
    side="right": (phi (x) id)coprod(a) = phi(a) 1
    Unknowns are the values phi(e_j); equations are indexed by (a, out).
    """
    d = model.dim
    entries = []
    for k in range(d):
        col = model.coprod.column(k)
        for ij, v in col.items():
            i, j = divmod(ij, d)
            keep, contract = (i, j) if side == "left" else (j, i)
            entries.append((k * d + keep, contract, v))
        for i, u in model.unit.data.items():
            entries.append((k * d + i, k, -u))
    return LinMap.from_entries((d,), (d, d), entries)


def solve_haar(model: QGModel, eig_tol: float = 1e-10) -> HaarData:
    """Compute the invariant functional and everything it induces."""
    d = model.dim
    ker = kernel(_invariance_system(model, "left"))
    if len(ker) != 1:
        raise ModelError(
            f"{model.name}: left-invariant functional space has dimension "
            f"{len(ker)}, expected 1")
    raw = ker[0]
    val_at_unit = sum((raw.get(i) * u for i, u in model.unit.data.items()),
                      Cyc.zero())
    if not val_at_unit.is_zero():
        scale = val_at_unit.inverse()
    else:
        scale = raw.data[min(raw.data)].inverse()
    values = [scale * raw.get(j) for j in range(d)]
    phi = LinMap.functional(model.A, values)

    psi = phi @ model.antipode

    def value_matrix(f: LinMap) -> LinMap:
        """M[i, j] = f(e_i e_j) for a functional f."""
        fm = f @ model.mult
        return LinMap.from_entries(
            model.A, model.A,
            ((ij // d, ij % d, v) for _, ij, v in fm.entries()))

    pmat = value_matrix(phi)
    try:
        pmat_inv = inverse(pmat)
    except SingularMap as e:
        raise ModelError(f"{model.name}: invariant functional is not faithful "
                         f"({e})") from e
    sigma = pmat_inv @ pmat.transpose()
    sigma_inv = inverse(sigma)

    qmat = value_matrix(psi)
    sigma_prime = inverse(qmat) @ qmat.transpose()

    # (phi (x) id)coprod has rank one: column k equals phi(e_k) delta
    dmap = (phi.tensor(model.idA)) @ model.coprod
    k0 = next(j for j in range(d) if not values[j].is_zero())
    delta = values[k0].inverse() * dmap.column(k0)
    delta_map = LinMap((), model.A, {0: dict(delta.data)})
    if not (dmap - delta_map @ phi).is_zero():
        raise ModelError(f"{model.name}: no single modular element matches "
                         "(phi (x) id)coprod")
    try:
        delta_inv = inverse(model.lmul(delta))(model.unit)
    except SingularMap as e:
        raise ModelError(f"{model.name}: modular element is not invertible "
                         f"({e})") from e

    scaled = phi @ model.antipode @ model.antipode
    mu = scaled.entry(0, k0) / values[k0]
    if not (scaled - phi.scale(mu)).is_zero():
        raise ModelError(f"{model.name}: phi o S^2 is not proportional to phi")

    sd = sigma(delta)
    j0 = next(iter(delta.data))
    nu = sd.get(j0) / delta.get(j0)
    if not (sd - nu * delta).is_zero():
        raise ModelError(f"{model.name}: sigma does not scale the modular element")

    gram = LinMap.from_entries(
        model.A, model.A,
        ((i, j, phi(model.mul(model.bar(model.basis_vec(i)),
                              model.basis_vec(j))).get(0))
         for i in range(d) for j in range(d)))
    if gram == gram.adjoint():
        eigs = np.linalg.eigvalsh(gram.to_numpy())
        gram_positive = bool(eigs.min() > eig_tol * max(1.0, eigs.max()))
    else:
        gram_positive = False
    if gram_positive != model.positive:
        raise ModelError(
            f"{model.name}: declared positive={model.positive} but the form "
            f"phi(a* b) {'is' if gram_positive else 'is not'} positive definite")

    return HaarData(model=model, phi=phi, psi=psi, pmat=pmat,
                    pmat_inv=pmat_inv, sigma=sigma, sigma_inv=sigma_inv,
                    sigma_prime=sigma_prime, delta=delta, delta_inv=delta_inv,
                    mu=mu, nu=nu, gram=gram, gram_positive=gram_positive)


def check_modular_structure(haar: HaarData) -> list[CheckRecord]:
    """All identities tying phi, psi, sigma, delta and mu together."""
    m = haar.model
    ck = Checker(f"{m.name}.haar")
    i, d_, S = m.idA, m.coprod, m.antipode
    phi, psi, sigma = haar.phi, haar.psi, haar.sigma
    delta, delta_inv, mu, nu = haar.delta, haar.delta_inv, haar.mu, haar.nu

    ck.exact("left-invariance", "(id(x)phi)coprod(a) = phi(a)1",
             lambda: (i.tensor(phi)) @ d_ - m.unit_map @ phi)
    ck.exact("right-invariance", "(psi(x)id)coprod(a) = psi(a)1",
             lambda: (psi.tensor(i)) @ d_ - m.unit_map @ psi)
    ck.exact("left-unique", "left-invariant functionals form a line",
             lambda: len(kernel(_invariance_system(m, "left"))) == 1)
    ck.exact("right-unique", "right-invariant functionals form a line",
             lambda: len(kernel(_invariance_system(m, "right"))) == 1)
    ck.exact("faithful", "phi(. a) = 0 forces a = 0",
             lambda: haar.pmat_inv @ haar.pmat - i)

    ck.exact("sigma.defining", "phi(ab) = phi(b sigma(a))",
             lambda: phi @ m.mult
             - phi @ m.mult @ m.flipA @ (sigma.tensor(i)))
    ck.exact("sigma.auto", "sigma(ab) = sigma(a)sigma(b)",
             lambda: sigma @ m.mult - m.mult @ (sigma.tensor(sigma)))
    ck.exact("sigma.unit", "sigma(1) = 1", lambda: sigma(m.unit) - m.unit)
    ck.exact("sigma.phi-fixed", "phi o sigma = phi", lambda: phi @ sigma - phi)
    ck.exact("sigma.s2-commute", "sigma o S^2 = S^2 o sigma",
             lambda: sigma @ S @ S - S @ S @ sigma)
    ck.exact("sigma.star", "sigma(a*) = (sigma^-1(a))*",
             lambda: sigma @ m.invol - m.invol @ haar.sigma_inv.conj())

    ck.exact("sigma-prime.defining", "psi(ab) = psi(b sigma'(a))",
             lambda: psi @ m.mult
             - psi @ m.mult @ m.flipA @ (haar.sigma_prime.tensor(i)))
    ck.exact("sigma-prime.conjugate", "sigma'(a) = delta sigma(a) delta^-1",
             lambda: haar.sigma_prime
             - m.lmul(delta) @ m.rmul(delta_inv) @ sigma)
    ck.exact("sigma-prime.antipode", "sigma' = S^-1 o sigma^-1 o S",
             lambda: haar.sigma_prime
             - m.antipode_inv @ haar.sigma_inv @ S)

    ck.exact("delta.grouplike", "coprod(delta) = delta(x)delta",
             lambda: d_(delta) - delta.tensor(delta))
    ck.exact("delta.counit", "eps(delta) = 1",
             lambda: m.counit_of(delta) - Cyc.one(1))
    ck.exact("delta.antipode", "S(delta) delta = 1",
             lambda: m.mul(S(delta), delta) - m.unit)
    ck.exact("delta.star", "delta* = delta", lambda: m.bar(delta) - delta)
    ck.exact("delta.right-shift", "phi(a delta) = phi(S(a))",
             lambda: phi @ m.rmul(delta) - phi @ S)
    ck.exact("delta.left-shift", "phi(delta a) = phi(S^-1(a))",
             lambda: phi @ m.lmul(delta) - phi @ m.antipode_inv)

    ck.exact("mu.scaling", "phi(S^2 a) = mu phi(a)",
             lambda: phi @ S @ S - phi.scale(mu))
    ck.exact("mu.unimodular-scalar", "mu conj(mu) = 1",
             lambda: mu * mu.conj() - Cyc.one(1))
    ck.exact("nu.inverse-scaling", "sigma(delta) = mu^-1 delta",
             lambda: nu * mu - Cyc.one(1))
    if m.positive:
        ck.exact("mu.positive-tier", "positive models have mu = 1",
                 lambda: mu - Cyc.one(1))
        ck.exact("phi.star", "phi(a*) = conj(phi(a))",
                 lambda: phi @ m.invol - phi.conj())
    ck.exact("phi.star-scaling", "phi(a*) = mu conj(phi(a))",
             lambda: phi @ m.invol - phi.conj().scale(mu))

    ck.exact("sigma.coprod-left", "coprod o sigma = (S^2 (x) sigma) o coprod",
             lambda: d_ @ sigma - (S @ S).tensor(sigma) @ d_)

    def alpha():
        return m.lmul(delta_inv) @ m.rmul(delta) @ m.antipode_inv @ m.antipode_inv

    ck.exact("sigma.coprod-right",
             "coprod o sigma = (sigma (x) delta^-1 S^-2(.) delta) o coprod",
             lambda: d_ @ sigma - sigma.tensor(alpha()) @ d_)
    ck.exact("psi.scaling", "psi(S^2 a) = mu psi(a)",
             lambda: psi @ S @ S - psi.scale(mu))
    return ck.records
