"""Per-result verification batteries.

Each named result about the induced structure becomes a battery of residuals
evaluated at every sample of a scene:

* ``METRIC``          — structure-level battery (J-tangency, the almost
                        paracontact axioms, metric compatibility, signature).
* ``TW_WZORY``        — the six connection/form identities that hold for any
                        J-tangent transversal field.
* ``COR_WZORY``       — their restrictions to fields in ker(eta).
* ``PROP_NORMAL``     — equivalence of the Nijenhuis and the operational
                        normality conditions.
* ``LEM_EST``         — eta = h(., xi), S preserves ker(eta), the defect
                        vector Z0 = S xi + xi lies in ker(eta), and
                        tau(Z) = -h(Z, phi Z0) there.
* ``LEM_CUBIC``       — the cubic-form identities on ker(eta).
* ``THM_STAU``        — S = -Id and tau = 0.
* ``THM_EQUIV``       — metric, para-(-1)-contact, para-(-1)-Sasakian and
                        normality hold jointly.
* ``THM_QUADRIC_FWD`` — total vanishing of the cubic form (the checkable
                        surrogate of the hyperquadric classification).
* ``THM_QUADRIC_CONV``— the converse: a centered quadric anticommuting with
                        the half-swap, with the position transversal, carries
                        a metric induced structure with all of the above.

Theorem hypotheses are enforced as numeric gates at the scene's theorem
tolerance; diagnostic mode disables the gates so negative behaviour can be
measured.  Gate skips and degeneracy skips are reported per sample and never
silently dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ChartLeak,
    DegenerateFrame,
    DegenerateJet,
    DegenerateMetric,
    HypothesisNotMet,
)
from .hypersurface import (
    DerivedTensors,
    ImmersionScene,
    InducedData,
    derive_tensors,
    induced_data,
    quadric_scene,
    residuals_from_data,
)
from .paracomplex import QuadricSpec
from .paracontact import (
    ParacontactData,
    axiom_residuals,
    contact_residual,
    induced_structure,
    metric_residual,
    normality_residuals,
    sasakian_residual,
)

SCENE_SUITES = (
    "METRIC",
    "TW_WZORY",
    "COR_WZORY",
    "PROP_NORMAL",
    "LEM_EST",
    "LEM_CUBIC",
    "THM_STAU",
    "THM_EQUIV",
    "THM_QUADRIC_FWD",
)

# Identities reported for information only; they never gate a battery.
_INFORMATIONAL = ("info_z0_norm", "info_h_shape_phi")

# Converse-battery tolerances, one per measured quantity.
CONVERSE_TOLERANCES = {
    "j_tangency": 1e-10,
    "metric": 1e-8,
    "signature_defect": 0.5,
    "s_plus_id": 1e-8,
    "tau_norm": 1e-8,
    "cubic_max": 1e-7,
    "contact_minus_one": 1e-6,
    "sasakian_minus_one": 1e-6,
    "nijenhuis": 1e-6,
    "operational": 1e-6,
}


# ----------------------------------------------------------------------
# per-point analysis


@dataclass
class PointAnalysis:
    """Everything the batteries consume at one sample, computed once."""

    u: np.ndarray
    ind: InducedData
    der: DerivedTensors
    pd: ParacontactData
    fundamental: tuple
    metric_res: float
    signature: tuple


def analyze_point(scene: ImmersionScene, u: np.ndarray) -> PointAnalysis:
    ind = induced_data(scene, u)
    der = derive_tensors(ind)
    pd = induced_structure(ind)
    res, sig = metric_residual(pd, ind.h)
    return PointAnalysis(
        u=np.asarray(u, dtype=float),
        ind=ind,
        der=der,
        pd=pd,
        fundamental=residuals_from_data(ind, der),
        metric_res=res,
        signature=sig,
    )


def analyze_scene(scene: ImmersionScene):
    """Analyze every sample; returns a list of PointAnalysis or error strings."""
    out = []
    for u in scene.samples:
        try:
            out.append(analyze_point(scene, u))
        except (ChartLeak, DegenerateFrame, DegenerateJet, DegenerateMetric) as exc:
            out.append(f"{type(exc).__name__}: {exc}")
    return out


# ----------------------------------------------------------------------
# reports


@dataclass
class SampleOutcome:
    index: int
    identities: dict
    extras: dict = field(default_factory=dict)
    max_residual: float = 0.0
    passed: bool = True
    skipped: bool = False
    skip_reason: str | None = None
    vacuous: bool = False
    vacuous_identities: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "identities": {k: float(v) for k, v in self.identities.items()},
            "extras": self.extras,
            "max_residual": float(self.max_residual),
            "passed": self.passed,
            "skipped": self.skipped,
            "skip_reason": self.skip_reason,
            "vacuous": self.vacuous,
            "vacuous_identities": list(self.vacuous_identities),
        }


@dataclass
class TheoremReport:
    theorem_id: str
    tolerance: object
    per_sample: list
    status: str  # passed | failed | skipped | vacuous
    gate: str | None = None

    @property
    def passed(self) -> bool:
        return self.status in ("passed", "vacuous")

    @property
    def vacuous(self) -> bool:
        return self.status == "vacuous"

    @property
    def num_skipped(self) -> int:
        return sum(1 for s in self.per_sample if s.skipped)

    @property
    def max_residual(self) -> float:
        vals = [s.max_residual for s in self.per_sample if not s.skipped]
        return max(vals) if vals else 0.0

    def degenerate_indices(self) -> list:
        return [
            s.index
            for s in self.per_sample
            if s.skipped and (s.skip_reason or "").startswith("degenerate")
        ]

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "tolerance": self.tolerance,
            "status": self.status,
            "gate": self.gate,
            "max_residual": self.max_residual,
            "num_skipped": self.num_skipped,
            "per_sample": [s.to_dict() for s in self.per_sample],
        }


def _score(identities: dict, tol, vacuous_identities=()) -> tuple:
    """(max counted residual, all-pass) over non-informational identities."""
    worst = 0.0
    ok = True
    for name, value in identities.items():
        if name in _INFORMATIONAL or name in vacuous_identities:
            continue
        limit = tol[name] if isinstance(tol, dict) else tol
        worst = max(worst, abs(float(value)))
        if abs(float(value)) > limit:
            ok = False
    return worst, ok


# ----------------------------------------------------------------------
# battery bodies (PointAnalysis -> identities dict)


def _tw_wzory_identities(pa: PointAnalysis) -> dict:
    ind, pd = pa.ind, pa.pd
    g, h, s, tau = ind.Gamma, ind.h, ind.S, ind.tau
    eta, phi, xi = pd.eta, pd.phi, pd.xi
    deta, dphi, dxi = pd.deta, pd.dphi, pd.dxi

    # eta(nabla_X Y) = h(X, phi Y) + X(eta(Y)) + eta(Y) tau(X)
    mixed = h @ phi + deta + np.outer(tau, eta)
    eq1 = np.einsum("k,kij->ij", eta, g) - mixed

    # phi(nabla_X Y) = nabla_X(phi Y) - eta(Y) S X - h(X, Y) xi
    nabla_phi = np.einsum("ikj->kij", dphi) + np.einsum("kim,mj->kij", g, phi)
    eq2 = (
        np.einsum("km,mij->kij", phi, g)
        - nabla_phi
        + np.einsum("j,ki->kij", eta, s)
        + np.einsum("ij,k->kij", h, xi)
    )

    # eta([X, Y]) = 0 for coordinate fields: antisymmetrized right side.
    eq3 = mixed - mixed.T

    # phi([X, Y]) = 0: nabla_X(phi Y) - nabla_Y(phi X) + eta(X) S Y - eta(Y) S X
    eq4 = (
        nabla_phi
        - nabla_phi.transpose(0, 2, 1)
        + np.einsum("i,kj->kij", eta, s)
        - np.einsum("j,ki->kij", eta, s)
    )

    # eta(nabla_X xi) = tau(X)
    nabla_xi = dxi.T + np.einsum("kim,m->ki", g, xi)
    eq5 = eta @ nabla_xi - tau

    # eta(S X) = -h(X, xi)
    eq6 = eta @ s + h @ xi

    return {
        "eta_nabla": float(np.max(np.abs(eq1))),
        "phi_nabla": float(np.max(np.abs(eq2))),
        "eta_bracket": float(np.max(np.abs(eq3))),
        "phi_bracket": float(np.max(np.abs(eq4))),
        "eta_nabla_xi": float(np.max(np.abs(eq5))),
        "eta_shape": float(np.max(np.abs(eq6))),
    }


def _nabla_field(g, x_val, y_val, dy):
    """(nabla_X Y)^k for fields given by coordinates and derivatives
    (dy[k, l] = d_l Y^k)."""
    return dy @ x_val + np.einsum("klm,l,m->k", g, x_val, y_val)


def _bracket_field(x_val, dx, y_val, dy):
    return dy @ x_val - dx @ y_val


def _cor_wzory_identities(pa: PointAnalysis) -> tuple:
    ind, pd = pa.ind, pa.pd
    if pd.n == 0:
        names = [
            "eta_nabla_zw",
            "eta_nabla_xi_z",
            "phi_nabla_zw",
            "eta_bracket_zw",
            "eta_bracket_z_xi",
        ]
        return {k: 0.0 for k in names}, names

    g, h, tau = ind.Gamma, ind.h, ind.tau
    eta, phi, xi = pd.eta, pd.phi, pd.xi
    z_vals = pd.D_basis
    z_ders = pd.dbasis  # [a, k, l]
    xi_der = pd.dxi.T  # [k, l]
    dphi = pd.dphi

    def phi_field(a):
        val = phi @ z_vals[a]
        der = np.einsum("lkm,m->kl", dphi, z_vals[a]) + phi @ z_ders[a]
        return val, der

    r1 = r2 = r3 = r4 = r5 = 0.0
    for a in range(z_vals.shape[0]):
        za, dza = z_vals[a], z_ders[a]
        pa_val, _ = phi_field(a)
        # eta(nabla_xi Z) = h(xi, phi Z)
        r2 = max(r2, abs(float(eta @ _nabla_field(g, xi, za, dza) - xi @ h @ pa_val)))
        # eta([Z, xi]) = -h(xi, phi Z) + tau(Z)
        br = _bracket_field(za, dza, xi, xi_der)
        r5 = max(r5, abs(float(eta @ br + xi @ h @ pa_val - tau @ za)))
        for b in range(z_vals.shape[0]):
            zb, dzb = z_vals[b], z_ders[b]
            pb_val, pb_der = phi_field(b)
            nab = _nabla_field(g, za, zb, dzb)
            # eta(nabla_Z W) = h(Z, phi W)
            r1 = max(r1, abs(float(eta @ nab - za @ h @ pb_val)))
            # phi(nabla_Z W) = nabla_Z(phi W) - h(Z, W) xi
            vec = phi @ nab - _nabla_field(g, za, pb_val, pb_der) + float(za @ h @ zb) * xi
            r3 = max(r3, float(np.max(np.abs(vec))))
            # eta([Z, W]) = h(Z, phi W) - h(W, phi Z)
            br = _bracket_field(za, dza, zb, dzb)
            r4 = max(
                r4, abs(float(eta @ br - za @ h @ pb_val + zb @ h @ pa_val))
            )
    return {
        "eta_nabla_zw": r1,
        "eta_nabla_xi_z": r2,
        "phi_nabla_zw": r3,
        "eta_bracket_zw": r4,
        "eta_bracket_z_xi": r5,
    }, []


def _lem_est_identities(pa: PointAnalysis) -> tuple:
    ind, pd = pa.ind, pa.pd
    h, s, tau = ind.h, ind.S, ind.tau
    eta, phi, xi = pd.eta, pd.phi, pd.xi
    z0 = s @ xi + xi
    out = {
        "eta_equals_h_xi": float(np.max(np.abs(eta - h @ xi))),
        "z0_in_kernel": abs(float(eta @ z0)),
        "info_z0_norm": float(np.max(np.abs(z0))),
    }
    vacuous = []
    if pd.n == 0:
        out["shape_preserves_kernel"] = 0.0
        out["tau_from_z0"] = 0.0
        vacuous = ["shape_preserves_kernel", "tau_from_z0"]
    else:
        out["shape_preserves_kernel"] = float(np.max(np.abs(pd.D_basis @ (s.T @ eta))))
        out["tau_from_z0"] = float(
            np.max(np.abs(pd.D_basis @ tau + pd.D_basis @ h @ (phi @ z0)))
        )
    return out, vacuous


def _lem_cubic_identities(pa: PointAnalysis) -> tuple:
    ind, pd = pa.ind, pa.pd
    q = pa.der.Q
    names = ["cubic_phi_reflection", "cubic_kernel_vanishing", "cubic_reeb_slot"]
    if pd.n == 0:
        out = {k: 0.0 for k in names}
        out["info_h_shape_phi"] = 0.0
        return out, names
    z = pd.D_basis
    zphi = z @ pd.phi.T  # rows are phi Z_a
    q_zz = np.einsum("ijk,aj,bk->iab", q, z, z)
    q_pp = np.einsum("ijk,aj,bk->iab", q, zphi, zphi)
    r1 = float(np.max(np.abs(q_zz + q_pp)))
    r2 = float(np.max(np.abs(np.einsum("ijk,ai,bj,ck->abc", q, z, z, z))))
    sz = z @ ind.S.T  # rows are S Z_a
    h_sw_phiw = np.einsum("ak,kl,al->a", sz, ind.h, zphi)
    q_xi = np.einsum("ijk,i,aj,ak->a", q, pd.xi, z, z)
    s_phi = zphi @ ind.S.T
    h_sphi_w = np.einsum("ak,kl,al->a", s_phi, ind.h, z)
    r3 = float(
        max(np.max(np.abs(q_xi + h_sw_phiw)), np.max(np.abs(h_sw_phiw + h_sphi_w)))
    )
    return {
        "cubic_phi_reflection": r1,
        "cubic_kernel_vanishing": r2,
        "cubic_reeb_slot": r3,
        "info_h_shape_phi": float(np.max(np.abs(h_sw_phiw))),
    }, []


def _thm_stau_identities(pa: PointAnalysis) -> dict:
    m = pa.ind.S.shape[0]
    return {
        "s_plus_id": float(np.max(np.abs(pa.ind.S + np.eye(m)))),
        "tau_norm": float(np.max(np.abs(pa.ind.tau))),
    }


def _prop_normal_identities(pa: PointAnalysis) -> dict:
    nij, op = normality_residuals(pa.pd, pa.ind)
    return {"nijenhuis": nij, "operational": op}


def _thm_equiv_identities(pa: PointAnalysis) -> dict:
    nij, op = normality_residuals(pa.pd, pa.ind)
    return {
        "metric": pa.metric_res,
        "contact_minus_one": contact_residual(pa.pd, pa.ind.h, -1.0),
        "sasakian_minus_one": sasakian_residual(pa.pd, pa.ind, -1.0),
        "nijenhuis": nij,
        "operational": op,
    }


def _quadric_fwd_identities(pa: PointAnalysis) -> dict:
    return {"cubic_max": float(np.max(np.abs(pa.der.Q)))}


def _metric_identities(pa: PointAnalysis) -> dict:
    ax = axiom_residuals(pa.pd)
    n = pa.pd.n
    return {
        "j_tangency": pa.pd.tangency,
        "phi_square": ax["phi_square"],
        "eta_xi": ax["eta_xi"],
        "phi_xi": ax["phi_xi"],
        "eta_phi": ax["eta_phi"],
        "eigen_split": ax["eigen_split"],
        "eigen_counts": 0.0 if ax["eigen_counts_ok"] else 1.0,
        "metric": pa.metric_res,
        "signature_defect": 0.0 if pa.signature == (n + 1, n) else 1.0,
    }


# gate kind per battery: None, "tangent", or "metric"
_BATTERIES = {
    "METRIC": (_metric_identities, None),
    "TW_WZORY": (_tw_wzory_identities, "tangent"),
    "COR_WZORY": (_cor_wzory_identities, "tangent"),
    "PROP_NORMAL": (_prop_normal_identities, "tangent"),
    "LEM_EST": (_lem_est_identities, "metric"),
    "LEM_CUBIC": (_lem_cubic_identities, "metric"),
    "THM_STAU": (_thm_stau_identities, "metric"),
    "THM_EQUIV": (_thm_equiv_identities, "metric"),
    "THM_QUADRIC_FWD": (_quadric_fwd_identities, "metric"),
}


def _gate_failure(pa: PointAnalysis, gate: str | None, tol: float) -> str | None:
    if gate is None:
        return None
    if pa.pd.tangency > tol:
        return f"gate: transversal not J-tangent (residual {pa.pd.tangency:.3g})"
    if gate == "metric" and pa.metric_res > tol:
        return f"gate: structure not metric (residual {pa.metric_res:.3g})"
    return None


def _run_battery(pa: PointAnalysis, theorem_id: str, tol, diagnostic: bool) -> dict:
    """Identities for one battery at one point; raises HypothesisNotMet when
    the gate fails outside diagnostic mode."""
    body, gate = _BATTERIES[theorem_id]
    gate_tol = tol if isinstance(tol, float) else 1e-6
    reason = _gate_failure(pa, gate, gate_tol)
    if reason and not diagnostic:
        raise HypothesisNotMet(f"{theorem_id}: {reason}")
    result = body(pa)
    if isinstance(result, tuple):
        return {"identities": result[0], "vacuous_identities": result[1]}
    return {"identities": result, "vacuous_identities": []}


# ----------------------------------------------------------------------
# public per-point operations


def _point_battery(scene, u, theorem_id, diagnostic):
    pa = analyze_point(scene, u)
    tol = float(scene.tolerances["theorem"])
    return _run_battery(pa, theorem_id, tol, diagnostic)["identities"]


def verify_tw_wzory(scene, u, diagnostic: bool = False) -> dict:
    """Six-identity battery on the coordinate frame fields."""
    return _point_battery(scene, u, "TW_WZORY", diagnostic)


def verify_cor_wzory(scene, u, diagnostic: bool = False) -> dict:
    """Five-identity battery on ker(eta) fields (vacuous for n = 0)."""
    return _point_battery(scene, u, "COR_WZORY", diagnostic)


def verify_lem_est(scene, u, diagnostic: bool = False) -> dict:
    """Shape/transversal-form battery under the metric hypothesis."""
    return _point_battery(scene, u, "LEM_EST", diagnostic)


def verify_lem_cubic(scene, u, diagnostic: bool = False) -> dict:
    """Cubic-form battery under the metric hypothesis."""
    return _point_battery(scene, u, "LEM_CUBIC", diagnostic)


def verify_thm_stau(scene, u, diagnostic: bool = False) -> tuple:
    """(max |S + Id|, max |tau|) under the metric hypothesis."""
    ids = _point_battery(scene, u, "THM_STAU", diagnostic)
    return ids["s_plus_id"], ids["tau_norm"]


def verify_quadric_forward(scene, u, diagnostic: bool = False) -> float:
    """max |Q| under the metric hypothesis (hyperquadric surrogate)."""
    return _point_battery(scene, u, "THM_QUADRIC_FWD", diagnostic)["cubic_max"]


# ----------------------------------------------------------------------
# scene-level suites


def run_suite(
    scene: ImmersionScene,
    theorem_id: str,
    diagnostic: bool = False,
    analyses: list | None = None,
) -> TheoremReport:
    """Evaluate one battery over every sample of a scene."""
    if theorem_id not in _BATTERIES:
        raise KeyError(f"unknown theorem id {theorem_id!r}")
    tol = float(scene.tolerances["theorem"])
    if analyses is None:
        analyses = analyze_scene(scene)
    _, gate = _BATTERIES[theorem_id]

    outcomes = []
    for idx, pa in enumerate(analyses):
        if isinstance(pa, str):
            outcomes.append(
                SampleOutcome(
                    index=idx,
                    identities={},
                    passed=False,
                    skipped=True,
                    skip_reason=f"degenerate: {pa}",
                )
            )
            continue
        reason = _gate_failure(pa, gate, tol)
        if reason and not diagnostic:
            outcomes.append(
                SampleOutcome(
                    index=idx,
                    identities={},
                    passed=False,
                    skipped=True,
                    skip_reason=reason,
                )
            )
            continue
        try:
            result = _run_battery(pa, theorem_id, tol, diagnostic=True)
        except DegenerateMetric as exc:
            outcomes.append(
                SampleOutcome(
                    index=idx,
                    identities={},
                    passed=False,
                    skipped=True,
                    skip_reason=f"degenerate: {exc}",
                )
            )
            continue
        ids = result["identities"]
        vac = result["vacuous_identities"]
        worst, ok = _score(ids, tol, vac)
        if theorem_id == "PROP_NORMAL":
            # The proposition is an equivalence: both residuals must sit on
            # the same side of the tolerance.
            ok = (ids["nijenhuis"] <= tol) == (ids["operational"] <= tol)
        all_vacuous = bool(vac) and all(
            k in vac or k in _INFORMATIONAL for k in ids
        )
        outcomes.append(
            SampleOutcome(
                index=idx,
                identities=ids,
                max_residual=worst,
                passed=ok,
                vacuous=all_vacuous,
                vacuous_identities=vac,
            )
        )

    return TheoremReport(
        theorem_id=theorem_id,
        tolerance=tol,
        per_sample=outcomes,
        status=_suite_status(outcomes),
        gate=gate,
    )


def _suite_status(outcomes) -> str:
    active = [o for o in outcomes if not o.skipped]
    if not active:
        return "skipped"
    if any(not o.passed for o in active):
        return "failed"
    if all(o.vacuous for o in active):
        return "vacuous"
    return "passed"


def verify_quadric_converse(
    spec: QuadricSpec,
    num_samples: int = 20,
    seed: int = 0,
    tolerances: dict | None = None,
) -> TheoremReport:
    """Full converse battery on a quadric scene with the position transversal.

    Builds the radial chart (base point found by seeded search), then checks
    J-tangency, metric compatibility with signature (n+1, n), S = -Id and
    tau = 0, total vanishing of the cubic form, and the (-1)-contact,
    (-1)-Sasakian and normality conditions, each against its own tolerance.
    """
    tol = dict(CONVERSE_TOLERANCES)
    if tolerances:
        tol.update(tolerances)
    scene = quadric_scene(spec, seed=seed, num_samples=num_samples)
    outcomes = []
    for idx, pa in enumerate(analyze_scene(scene)):
        if isinstance(pa, str):
            outcomes.append(
                SampleOutcome(
                    index=idx,
                    identities={},
                    passed=False,
                    skipped=True,
                    skip_reason=f"degenerate: {pa}",
                )
            )
            continue
        nij, op = normality_residuals(pa.pd, pa.ind)
        stau = _thm_stau_identities(pa)
        ids = {
            "j_tangency": pa.pd.tangency,
            "metric": pa.metric_res,
            "signature_defect": 0.0 if pa.signature == (spec.n + 1, spec.n) else 1.0,
            "s_plus_id": stau["s_plus_id"],
            "tau_norm": stau["tau_norm"],
            "cubic_max": float(np.max(np.abs(pa.der.Q))),
            "contact_minus_one": contact_residual(pa.pd, pa.ind.h, -1.0),
            "sasakian_minus_one": sasakian_residual(pa.pd, pa.ind, -1.0),
            "nijenhuis": nij,
            "operational": op,
        }
        worst, ok = _score(ids, tol)
        outcomes.append(
            SampleOutcome(
                index=idx,
                identities=ids,
                extras={"signature": list(pa.signature)},
                max_residual=worst,
                passed=ok,
            )
        )
    return TheoremReport(
        theorem_id="THM_QUADRIC_CONV",
        tolerance=tol,
        per_sample=outcomes,
        status=_suite_status(outcomes),
        gate=None,
    )
