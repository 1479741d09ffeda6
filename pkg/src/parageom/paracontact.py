"""The induced almost paracontact structure and its compatibility residuals.

When the transversal field C is J-tangent, splitting J against the frame
induces a triple (phi, xi, eta):

    J e_i = phi^k_i e_k + eta_i C,      J C = xi^k e_k   (+ residual * C).

The transversal coefficient of J C is the J-tangency residual; when it
vanishes the triple satisfies the almost paracontact axioms
phi^2 = Id - eta (x) xi, eta(xi) = 1, phi xi = 0, eta o phi = 0, and phi
splits ker(eta) into +-1 eigenspaces of equal dimension.

Against the second fundamental form h this module measures, per point:

* metric compatibility  h(phi X, phi Y) + h(X, Y) - eta(X) eta(Y),
* the contact condition  d eta = alpha * h(., phi .),
* normality, both as the Nijenhuis defect [phi, phi] - 2 d eta (x) xi and
  as the operational form S phi Z - phi S Z + tau(Z) xi on ker(eta),
* the Sasakian condition on the Levi-Civita connection of h.

All exterior derivatives use the convention
d w(X, Y) = (X(w(Y)) - Y(w(X)) - w([X, Y])) / 2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateFrame, DegenerateMetric
from .hypersurface import Frame, InducedData
from .jets import jet_space
from .paracomplex import apply_J

# Pivot floor for selecting independent spanning fields of ker(eta).
_DBASIS_PIVOT = 1e-8
# Relative eigenvalue threshold used when counting a signature.
_SIGNATURE_REL = 1e-10


@dataclass
class ParacontactData:
    """Pointwise structure tensors, their first chart derivatives, and the
    jet arrays they were extracted from.

    ``phi[k, j]`` is the e_k coefficient of the tangential part of J e_j;
    ``D_basis`` holds 2n orthonormal coordinate vectors spanning ker(eta),
    differentiable in u (``dbasis[a, k, l]`` = d_l of field a, component k).
    """

    n: int
    xi: np.ndarray
    eta: np.ndarray
    phi: np.ndarray
    d_eta: np.ndarray
    D_basis: np.ndarray
    tangency: float
    dxi: np.ndarray
    deta: np.ndarray
    dphi: np.ndarray
    dbasis: np.ndarray
    xi_jets: np.ndarray
    eta_jets: np.ndarray
    phi_jets: np.ndarray
    dbasis_jets: np.ndarray


def induced_structure(
    induced: InducedData,
    f_jet: np.ndarray | None = None,
    C_jet: np.ndarray | None = None,
) -> ParacontactData:
    """Build (phi, xi, eta) and the ker(eta) basis by decomposing J against
    the frame, everything carried as jets so derivatives come along."""
    frame = induced.frame
    if f_jet is not None and C_jet is not None and (
        f_jet is not frame.f_jet or C_jet is not frame.C_jet
    ):
        frame = Frame(jet_space(f_jet.shape[0] - 1), f_jet, C_jet)
    space = frame.space
    m = frame.m

    je = apply_J(frame.tangent_jets)
    jc = apply_J(frame.C_jet)
    rhs = np.concatenate([je, jc[:, None, :]], axis=1)
    tang, transv = frame.decompose_jets(rhs)

    phi_jets = tang[:, :m]  # [k, j, coeff]
    eta_jets = transv[:m]
    xi_jets = tang[:, m]
    rho = transv[m]

    deta = np.moveaxis(space.grad(eta_jets), -1, 0)  # [l, i]
    d_eta = 0.5 * (deta - deta.T)
    dbasis_jets = _kernel_basis_jets(space, induced.n, eta_jets, xi_jets)

    return ParacontactData(
        n=induced.n,
        xi=xi_jets[..., 0],
        eta=eta_jets[..., 0],
        phi=phi_jets[..., 0],
        d_eta=d_eta,
        D_basis=dbasis_jets[..., 0],
        tangency=float(abs(rho[0])),
        dxi=space.grad(xi_jets).T,
        deta=deta,
        dphi=np.moveaxis(space.grad(phi_jets), -1, 0),
        dbasis=space.grad(dbasis_jets),
        xi_jets=xi_jets,
        eta_jets=eta_jets,
        phi_jets=phi_jets,
        dbasis_jets=dbasis_jets,
    )


def _kernel_basis_jets(space, n, eta_jets, xi_jets):
    """2n orthonormal jet fields spanning ker(eta).

    Starts from the projections Z_i = e_i - eta_i xi (smooth in u), then runs
    modified Gram-Schmidt in jet arithmetic with pivots chosen by the value
    norm at the point, so the selected combination is locally constant and
    the resulting fields stay jet-differentiable.
    """
    m = space.num_vars
    want = 2 * n
    cand = np.zeros((m, m, space.ncoeff))
    cand[np.arange(m), np.arange(m), 0] = 1.0
    cand -= space.mul(eta_jets[:, None, :], xi_jets[None, :, :])

    chosen = np.zeros((want, m, space.ncoeff))
    remaining = list(range(m))
    for step in range(want):
        norms = [float(np.linalg.norm(cand[r][:, 0])) for r in remaining]
        best = int(np.argmax(norms))
        if norms[best] < _DBASIS_PIVOT:
            raise DegenerateFrame(
                "cannot span ker(eta): residual candidates below pivot floor"
            )
        r = remaining.pop(best)
        v = cand[r]
        norm_jet = space.sqrt(space.mul(v, v).sum(axis=0))
        v = space.div(v, norm_jet[None, :])
        chosen[step] = v
        for s in remaining:
            coef = space.mul(cand[s], v).sum(axis=0)
            cand[s] = cand[s] - space.mul(coef[None, :], v)
    return chosen


def j_tangency_residual(f_jet: np.ndarray, C_jet: np.ndarray) -> float:
    """|transversal coefficient of J C| at the point; 0 iff C is J-tangent."""
    space = jet_space(f_jet.shape[0] - 1)
    frame = Frame(space, f_jet, C_jet)
    _, b = frame.decompose(apply_J(C_jet)[:, 0])
    return abs(b)


def signature_of(h: np.ndarray, rel_threshold: float = _SIGNATURE_REL):
    """Inertia (positives, negatives) of a symmetric matrix by eigenvalue sign
    count; eigenvalues within ``rel_threshold * max|eig|`` of zero count as
    neither."""
    vals = np.linalg.eigvalsh(0.5 * (h + h.T))
    scale = float(np.max(np.abs(vals))) if vals.size else 0.0
    if scale == 0.0:
        return (0, 0)
    thr = rel_threshold * scale
    return (int(np.sum(vals > thr)), int(np.sum(vals < -thr)))


def metric_residual(pd: ParacontactData, h: np.ndarray):
    """Max defect of h(phi X, phi Y) + h(X, Y) - eta(X) eta(Y) over the frame,
    together with the inertia of h."""
    defect = (
        np.einsum("ki,lj,kl->ij", pd.phi, pd.phi, h)
        + h
        - np.outer(pd.eta, pd.eta)
    )
    return float(np.max(np.abs(defect))), signature_of(h)


def axiom_residuals(pd: ParacontactData) -> dict:
    """Residuals of the almost paracontact axioms; all construction-level,
    independent of any metric condition."""
    m = pd.eta.shape[0]
    out = {
        "phi_square": float(
            np.max(np.abs(pd.phi @ pd.phi - np.eye(m) + np.outer(pd.xi, pd.eta)))
        ),
        "eta_xi": float(abs(pd.eta @ pd.xi - 1.0)),
        "phi_xi": float(np.max(np.abs(pd.phi @ pd.xi))),
        "eta_phi": float(np.max(np.abs(pd.eta @ pd.phi))),
    }
    if pd.n == 0:
        out["eigen_split"] = 0.0
        out["eigen_counts_ok"] = True
        return out
    action = np.einsum("bk,kl,al->ba", pd.D_basis, pd.phi, pd.D_basis)
    vals = np.linalg.eigvals(action)
    out["eigen_split"] = float(np.max(np.minimum(np.abs(vals - 1), np.abs(vals + 1))))
    out["eigen_counts_ok"] = bool(int(np.sum(vals.real > 0)) == pd.n)
    return out


def _abs_h_norm_matrix(h: np.ndarray) -> np.ndarray:
    """|h| as a positive definite matrix (eigendecomposition with absolute
    eigenvalues); the norm used for vector-valued residuals."""
    vals, vecs = np.linalg.eigh(0.5 * (h + h.T))
    scale = float(np.max(np.abs(vals)))
    if scale == 0.0 or np.min(np.abs(vals)) < _SIGNATURE_REL * scale:
        raise DegenerateMetric("h is singular; no |h| norm")
    return (vecs * np.abs(vals)) @ vecs.T


def normality_residuals(pd: ParacontactData, induced: InducedData):
    """(Nijenhuis defect, operational defect).

    The first is the max-norm of [phi, phi] - 2 d eta (x) xi in coordinates;
    the second is the |h|-norm of S phi Z - phi S Z + tau(Z) xi over the
    ker(eta) basis, which is the authoritative check.
    """
    phi, dphi = pd.phi, pd.dphi
    nij = (
        np.einsum("li,lkj->kij", phi, dphi)
        - np.einsum("lj,lki->kij", phi, dphi)
        - np.einsum("kl,ilj->kij", phi, dphi)
        + np.einsum("kl,jli->kij", phi, dphi)
    )
    defect = nij - 2.0 * np.einsum("ij,k->kij", pd.d_eta, pd.xi)
    nijenhuis = float(np.max(np.abs(defect)))

    if pd.n == 0:
        return nijenhuis, 0.0
    habs = _abs_h_norm_matrix(induced.h)
    s, tau = induced.S, induced.tau
    worst = 0.0
    for z in pd.D_basis:
        v = s @ (pd.phi @ z) - pd.phi @ (s @ z) + float(tau @ z) * pd.xi
        worst = max(worst, float(np.sqrt(v @ habs @ v)))
    return nijenhuis, worst


def contact_residual(pd: ParacontactData, h: np.ndarray, alpha: float) -> float:
    """Max defect of d eta(X, Y) = alpha * h(X, phi Y) over frame pairs."""
    return float(np.max(np.abs(pd.d_eta - alpha * (h @ pd.phi))))


def levi_civita(h: np.ndarray, dh: np.ndarray) -> np.ndarray:
    """Christoffel symbols of the (pseudo-)metric h from the Koszul formula.

    ``dh[l, i, j]`` is d_l h_{ij}; returns ``G[k, i, j]``, symmetric in (i, j).
    """
    m = h.shape[0]
    det = float(np.linalg.det(h))
    scale = max(np.max(np.abs(h)), 1e-30) ** m
    if abs(det) < 1e-10 * scale:
        raise DegenerateMetric(f"h determinant {det:.3g} below floor")
    h_inv = np.linalg.inv(h)
    t = dh + dh.transpose(1, 0, 2) - dh.transpose(1, 2, 0)
    return 0.5 * np.einsum("kl,ijl->kij", h_inv, t)


def metric_compatibility_residual(h: np.ndarray, dh: np.ndarray) -> float:
    """Self-test: the covariant derivative of h under its own Levi-Civita
    connection must vanish."""
    g = levi_civita(h, dh)
    nabla_h = (
        dh
        - np.einsum("pij,pk->ijk", g, h)
        - np.einsum("pik,jp->ijk", g, h)
    )
    return float(np.max(np.abs(nabla_h)))


def sasakian_residual(pd: ParacontactData, induced: InducedData, alpha: float) -> float:
    """Max defect of (nabla-hat_X phi)(Y) = alpha(-h(X, Y) xi + eta(Y) X)
    over frame pairs, with nabla-hat the Levi-Civita connection of h."""
    g = levi_civita(induced.h, induced.dh)
    phi = pd.phi
    nab_phi = (
        pd.dphi
        + np.einsum("kil,lj->ikj", g, phi)
        - np.einsum("lij,kl->ikj", g, phi)
    )
    m = phi.shape[0]
    rhs = alpha * (
        -np.einsum("ij,k->ikj", induced.h, pd.xi)
        + np.einsum("j,ki->ikj", pd.eta, np.eye(m))
    )
    return float(np.max(np.abs(nab_phi - rhs)))


def dperp_direction(pd: ParacontactData, h: np.ndarray) -> np.ndarray:
    """Unit vector spanning {X : h(X, Z) = 0 for all Z in ker(eta)}.

    Diagnostic only; equals h^{-1} eta up to scale, and coincides with xi
    exactly when eta(X) = h(X, xi).
    """
    det = float(np.linalg.det(h))
    scale = max(np.max(np.abs(h)), 1e-30) ** h.shape[0]
    if abs(det) < 1e-10 * scale:
        raise DegenerateMetric("h is singular; annihilator line undefined")
    v = np.linalg.solve(h, pd.eta)
    return v / np.linalg.norm(v)


@dataclass
class MetricReport:
    """Everything the structure-level battery measures at one point."""

    metric_residual: float
    signature: tuple
    j_tangency_residual: float
    axioms: dict
    normality_residual: tuple | None
    contact_alpha_residual: dict
    sasakian_alpha_residual: dict
    levi_civita: np.ndarray | None
    h_degenerate: bool


def structure_report(
    induced: InducedData,
    pd: ParacontactData,
    alphas=(-1.0,),
) -> MetricReport:
    """Evaluate the full structure battery at one point.

    Quantities needing h^{-1} are reported as None/empty when h is singular;
    callers decide whether that is a skip or a failure.
    """
    res, sig = metric_residual(pd, induced.h)
    contact = {a: contact_residual(pd, induced.h, a) for a in alphas}
    try:
        lc = levi_civita(induced.h, induced.dh)
        sasakian = {a: sasakian_residual(pd, induced, a) for a in alphas}
        normality = normality_residuals(pd, induced)
        degenerate = False
    except DegenerateMetric:
        lc = None
        sasakian = {}
        normality = None
        degenerate = True
    return MetricReport(
        metric_residual=res,
        signature=sig,
        j_tangency_residual=pd.tangency,
        axioms=axiom_residuals(pd),
        normality_residual=normality,
        contact_alpha_residual=contact,
        sasakian_alpha_residual=sasakian,
        levi_civita=lc,
        h_degenerate=degenerate,
    )
