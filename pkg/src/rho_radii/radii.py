"""Class-membership tests and operator radii.

The single-operator test evaluates the positivity kernel
k(z, z) = rho*I - (rho-1)(zA + (zA)*) + (rho-2)(zA)*(zA) over the closed
unit disk; membership holds iff its smallest eigenvalue stays nonnegative.
The radius w_rho is the smallest u such that A/u passes, located by
bisection.  Tuple variants work through the pencil transform phi on the
polydisk and through substitution of sampled commuting strict contractions.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, InternalError
from .linalg import as_matrix, op_norm, spectral_radius
from .pencil import OperatorTuple, eval_pencil

IN = "In"
OUT = "Out"
BORDERLINE = "Borderline"

CERTIFIED = "Certified"
NECESSARY_ONLY = "NecessaryOnly"

DEFAULT_TOL = 1e-9
DEFAULT_WIDTH = 1e-6
DEFAULT_BUDGET = 64

#: Strict-contraction cap for sampled commuting tuples.
NORM_CAP = 1 - 1e-6

#: Radius used for "scalar polydisk point" samples; any value < 1 is a
#: valid member of the strict-contraction family.
SCALAR_POINT_RADIUS = 1 - 1e-12

_GOLDEN = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class MembershipVerdict:
    decision: str
    margin: float
    certificate: dict
    exactness: str = CERTIFIED

    @property
    def is_in(self) -> bool:
        return self.decision in (IN, BORDERLINE)

    def to_json(self) -> dict:
        return {
            "decision": self.decision,
            "margin": self.margin,
            "certificate": self.certificate,
            "exactness": self.exactness,
        }


@dataclass(frozen=True)
class RadiusReport:
    lo: float
    hi: float
    method: str
    grid_spec: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def mid(self) -> float:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def to_json(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "method": self.method,
            "grid_spec": self.grid_spec,
            "wall_time_s": self.wall_time,
        }


@dataclass(frozen=True)
class CommutingTuple:
    """An operator tuple with a recorded commutation certificate."""

    base: OperatorTuple
    commutator_residual: float
    max_norm: float

    def __post_init__(self):
        if self.commutator_residual > 1e-10:
            raise InputError(
                f"commutator residual {self.commutator_residual:.3e} exceeds 1e-10"
            )
        if self.max_norm >= 1:
            raise InputError("commuting tuple must consist of strict contractions")

    @staticmethod
    def from_tuple(t: OperatorTuple) -> "CommutingTuple":
        return CommutingTuple(t, t.commutator_residual(), t.max_norm())


# ---------------------------------------------------------------------------
# batched kernel / transform evaluation


def _kernel_lambda_min(a: np.ndarray, rho: float, zs: np.ndarray) -> np.ndarray:
    """lambda_min of k(z, z) for a batch of scalar disk points ``zs``."""
    ah = a.conj().T
    aha = ah @ a
    eye = np.eye(a.shape[0])
    z = zs[:, None, None]
    k = (
        rho * eye
        - (rho - 1) * (z * a + z.conj() * ah)
        + (rho - 2) * (np.abs(z) ** 2) * aha
    )
    k = (k + k.conj().transpose(0, 2, 1)) / 2
    return np.linalg.eigvalsh(k)[:, 0]


def _golden_min(f, lo: float, hi: float, iters: int = 40):
    """Golden-section minimization of a unimodal scalar function."""
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(iters):
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = f(x2)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def _kernel_disk_min(a: np.ndarray, rho: float, n_theta: int = 512, refine_rounds: int = 3):
    """Minimum of lambda_min(k(z, z)) over the closed disk, with witness.

    For rho <= 2 the per-direction profile in r is concave with positive
    value at r = 0, so the disk minimum sits on the boundary circle.  For
    rho > 2 an interior r-grid is scanned as well.
    """
    thetas = np.linspace(0, 2 * np.pi, n_theta, endpoint=False)
    bvals = _kernel_lambda_min(a, rho, np.exp(1j * thetas))
    i = int(np.argmin(bvals))
    best_theta, best_val = float(thetas[i]), float(bvals[i])
    span = 2 * np.pi / n_theta
    g = lambda th: float(_kernel_lambda_min(a, rho, np.exp(1j * np.array([th])))[0])
    for _ in range(refine_rounds):
        best_theta, best_val = _golden_min(g, best_theta - span, best_theta + span, iters=16)
        span *= 0.05
    witness = complex(np.exp(1j * best_theta))

    if rho > 2:
        rs = np.linspace(1.0 / 64, 1.0, 64)
        th = np.linspace(0, 2 * np.pi, 128, endpoint=False)
        rr, tt = np.meshgrid(rs, th, indexing="ij")
        zs = (rr * np.exp(1j * tt)).ravel()
        vals = _kernel_lambda_min(a, rho, zs)
        j = int(np.argmin(vals))
        if float(vals[j]) < best_val:
            r0, t0 = float(rr.ravel()[j]), float(tt.ravel()[j])
            # one local refinement round around the interior minimizer
            rloc = np.clip(np.linspace(r0 - 1 / 64, r0 + 1 / 64, 17), 0, 1)
            tloc = np.linspace(t0 - 2 * np.pi / 128, t0 + 2 * np.pi / 128, 17)
            rr2, tt2 = np.meshgrid(rloc, tloc, indexing="ij")
            zs2 = (rr2 * np.exp(1j * tt2)).ravel()
            vals2 = _kernel_lambda_min(a, rho, zs2)
            j2 = int(np.argmin(vals2))
            if float(vals2[j2]) < best_val:
                best_val = float(vals2[j2])
                witness = complex(zs2[j2])

    return best_val, witness


def _psi_boundary_min(a: np.ndarray, rho: float, n_theta: int = 512, r: float = 1 - 1e-6):
    """min over the ring |z| = r of lambda_min(Re psi(z)); -inf past a pole."""
    d = a.shape[0]
    zs = r * np.exp(1j * np.linspace(0, 2 * np.pi, n_theta, endpoint=False))
    m = np.eye(d) - zs[:, None, None] * a
    try:
        inv = np.linalg.inv(m)
    except np.linalg.LinAlgError:
        return -math.inf
    if not np.all(np.isfinite(inv)):
        return -math.inf
    psi = (1 - 2 / rho) * np.eye(d) + (2 / rho) * inv
    re = (psi + psi.conj().transpose(0, 2, 1)) / 2
    return float(np.linalg.eigvalsh(re)[:, 0].min())


def _phi_boundary_sup(a: np.ndarray, rho: float, n_theta: int = 512, r: float = 1 - 1e-6):
    """sup over the ring |z| = r of ||phi(z)||; +inf past a pole."""
    d = a.shape[0]
    zs = r * np.exp(1j * np.linspace(0, 2 * np.pi, n_theta, endpoint=False))
    za = zs[:, None, None] * a
    m = (rho - 1) * za - rho * np.eye(d)
    try:
        phi = za @ np.linalg.inv(m)
    except np.linalg.LinAlgError:
        return math.inf
    if not np.all(np.isfinite(phi)):
        return math.inf
    return float(np.linalg.svd(phi, compute_uv=False)[:, 0].max())


def kernel_margin(a, rho: float) -> float:
    """Signed disk minimum of the membership kernel (fast path, no report)."""
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise InputError("membership input must be square")
    return _kernel_disk_min(m, rho)[0]


# ---------------------------------------------------------------------------
# single-operator membership and radii


def membership_single(a, rho: float, tol: float = DEFAULT_TOL, cross_check: bool = True) -> MembershipVerdict:
    """Decide membership of a single operator at level rho.

    The decision comes from the kernel condition on the closed disk; the
    Herglotz-transform condition is evaluated on a near-boundary ring as a
    cross-check and recorded in the certificate.
    """
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise InputError("membership input must be square")
    if rho <= 0:
        raise InputError("rho must be positive")
    if tol <= 0:
        raise InputError("tol must be positive")
    margin, witness = _kernel_disk_min(m, rho)
    decision = IN if margin >= -tol else OUT
    certificate = {
        "method": "kernel-disk-grid",
        "theta_points": 512,
        "interior_r_points": 64 if rho > 2 else 0,
        "witness_z": [witness.real, witness.imag],
        "kernel_margin": margin,
        "tol": tol,
    }
    if cross_check:
        psi_min = _psi_boundary_min(m, rho)
        psi_decision = IN if psi_min >= -max(tol, 1e-6) else OUT
        certificate["psi_margin"] = psi_min
        certificate["psi_decision"] = psi_decision
    return MembershipVerdict(decision, margin, certificate)


def membership_single_all_conditions(a, rho: float, tol: float = DEFAULT_TOL) -> dict:
    """Verdicts from the kernel, Herglotz, and Schur conditions separately.

    Returns {"kernel": ..., "psi": ..., "phi": ...} decisions plus margins.
    Boundary-band cases (|margin| within the grid slack) are reported as
    Borderline so callers can treat them as wildcards.
    """
    m = as_matrix(a)
    band = max(tol, 1e-6)
    kmargin, _ = _kernel_disk_min(m, rho)
    pmargin = _psi_boundary_min(m, rho)
    fsup = _phi_boundary_sup(m, rho)
    fmargin = 1 - fsup

    def classify(margin):
        if margin < -band:
            return OUT
        if margin > band:
            return IN
        return BORDERLINE

    return {
        "kernel": classify(kmargin),
        "psi": classify(pmargin),
        "phi": classify(fmargin),
        "kernel_margin": kmargin,
        "psi_margin": pmargin,
        "phi_margin": fmargin,
    }


def _bisect_radius(norm, lo, hi, feasible, width, method, grid_spec) -> RadiusReport:
    start = time.perf_counter()
    if norm == 0.0:
        return RadiusReport(0.0, 0.0, method, grid_spec, time.perf_counter() - start)
    if feasible(lo):
        return RadiusReport(lo, lo, method, grid_spec, time.perf_counter() - start)
    if not feasible(hi):
        hi2 = hi * (1 + 1e-9)
        if not feasible(hi2):
            raise InternalError(
                f"radius bracket inverted: upper endpoint {hi} infeasible ({method})"
            )
        hi = hi2
    while hi - lo > width:
        mid = (lo + hi) / 2
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return RadiusReport(lo, hi, method, grid_spec, time.perf_counter() - start)


def w_rho(a, rho: float, width: float = DEFAULT_WIDTH, tol: float = DEFAULT_TOL) -> RadiusReport:
    """Operator radius w_rho(A) = inf{u > 0 : A/u passes membership at rho}.

    Bracketed by ||A||/rho and the spectral radius from below, and by
    ||A|| * max(1, 2/rho - 1) from above, then bisected.
    """
    m = as_matrix(a)
    if rho <= 0:
        raise InputError("rho must be positive")
    norm = op_norm(m)
    grid_spec = {"theta_points": 512, "tol": tol, "width": width}
    if norm == 0.0:
        return RadiusReport(0.0, 0.0, "kernel-bisection", grid_spec, 0.0)
    lo = max(spectral_radius(m), norm / rho)
    hi = norm * max(1.0, 2.0 / rho - 1.0)

    def feasible(u):
        return kernel_margin(m / u, rho) >= -tol

    return _bisect_radius(norm, lo, hi, feasible, width, "kernel-bisection", grid_spec)


def numerical_radius(a, n_theta: int = 512) -> float:
    """w(A) = max over directions theta of lambda_max(Re(e^{i theta} A))."""
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise InputError("numerical radius input must be square")
    thetas = np.linspace(0, 2 * np.pi, n_theta, endpoint=False)
    phases = np.exp(1j * thetas)[:, None, None]
    re = (phases * m + (phases * m).conj().transpose(0, 2, 1)) / 2
    vals = np.linalg.eigvalsh(re)[:, -1]
    i = int(np.argmax(vals))

    def g(th):
        rot = np.exp(1j * th) * m
        return -float(np.linalg.eigvalsh((rot + rot.conj().T) / 2)[-1])

    span = 2 * np.pi / n_theta
    _, neg = _golden_min(g, float(thetas[i]) - span, float(thetas[i]) + span, iters=40)
    return max(float(vals[i]), -neg)


# ---------------------------------------------------------------------------
# sampling of commuting tuples


def sample_commuting_tuple(dim: int, n_vars: int, seed: int, norm_cap: float = NORM_CAP) -> CommutingTuple:
    """One deterministic commuting tuple of strict contractions.

    Even seeds draw from the simultaneously-diagonalizable (normal) family;
    odd seeds from polynomials in a single nilpotent Jordan-type matrix.
    """
    if dim < 1:
        raise InputError("dim must be >= 1")
    if not 0 < norm_cap < 1:
        raise InputError("norm_cap must lie in (0, 1)")
    rng = np.random.default_rng(seed)
    if seed % 2 == 0 or dim == 1:
        # family (a): C_k = U D_k U* with a common random unitary
        g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        u, _ = np.linalg.qr(g)
        mats = []
        for _ in range(n_vars):
            radii = rng.uniform(0, 1, dim) ** 0.5
            angles = rng.uniform(0, 2 * np.pi, dim)
            d = np.diag(radii * np.exp(1j * angles))
            mats.append(u @ d @ u.conj().T)
    else:
        # family (b): C_k = p_k(J) for one strictly upper-triangular J
        j = np.triu(
            rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim)), k=1
        )
        powers = [np.eye(dim, dtype=complex)]
        for _ in range(dim - 1):
            powers.append(powers[-1] @ j)
        mats = []
        for _ in range(n_vars):
            coeffs = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
            coeffs[0] *= 0.3  # keep the constant part from dominating
            mats.append(sum(c * p for c, p in zip(coeffs, powers)))
    capped = []
    for m in mats:
        nrm = float(np.linalg.norm(m, 2))
        if nrm > norm_cap:
            m = m * (norm_cap / nrm)
        capped.append(m)
    return CommutingTuple.from_tuple(OperatorTuple(tuple(capped)))


def sample_commuting_tuples(n_vars: int, budget: int, seed: int = 0, dims=(1, 2, 3, 4), norm_cap: float = NORM_CAP):
    """Deterministic batch of samples, alternating both families and dims."""
    out = []
    for i in range(budget):
        dim = dims[i % len(dims)]
        out.append(sample_commuting_tuple(dim, n_vars, seed * 10007 + i, norm_cap))
    return out


def _scalar_torus_points(n_vars: int, count: int, radius: float = SCALAR_POINT_RADIUS):
    """Deterministic spread of torus-scaled scalar points in the polydisk."""
    pts = []
    for i in range(count):
        angles = [2 * np.pi * ((i * (k + 1) * 0.6180339887498949) % 1.0) for k in range(n_vars)]
        pts.append(np.array([radius * np.exp(1j * t) for t in angles]))
    return pts


# ---------------------------------------------------------------------------
# tuple membership and radii


def _phi_polydisk_sup_pair(a: OperatorTuple, rho: float, n_theta: int = 128,
                           r_values=(0.9, 0.99, 1 - 1e-4), refine_rounds: int = 2):
    """sup over a refined closed-bidisk grid of ||phi(z)|| for a 2-tuple."""
    d = a.dim
    eye = np.eye(d)
    m1, m2 = a.mats

    def sup_on(z1s, z2s):
        zz1, zz2 = np.meshgrid(z1s, z2s, indexing="ij")
        za = zz1.ravel()[:, None, None] * m1 + zz2.ravel()[:, None, None] * m2
        res = (rho - 1) * za - rho * eye
        try:
            phi = za @ np.linalg.inv(res)
        except np.linalg.LinAlgError:
            return math.inf, (0.0, 0.0)
        if not np.all(np.isfinite(phi)):
            return math.inf, (0.0, 0.0)
        s = np.linalg.svd(phi, compute_uv=False)[:, 0]
        j = int(np.argmax(s))
        return float(s[j]), (complex(zz1.ravel()[j]), complex(zz2.ravel()[j]))

    thetas = np.linspace(0, 2 * np.pi, n_theta, endpoint=False)
    best, witness = -math.inf, (0.0, 0.0)
    for r in r_values:
        val, wit = sup_on(r * np.exp(1j * thetas), r * np.exp(1j * thetas))
        if val > best:
            best, witness = val, wit
    if not math.isfinite(best):
        return best, witness
    # refine near the maximizer, pushing the radius toward the torus
    span = 2 * np.pi / n_theta
    t1 = float(np.angle(witness[0]))
    t2 = float(np.angle(witness[1]))
    for _ in range(refine_rounds):
        loc1 = t1 + np.linspace(-span, span, 17)
        loc2 = t2 + np.linspace(-span, span, 17)
        r = 1 - 1e-6
        val, wit = sup_on(r * np.exp(1j * loc1), r * np.exp(1j * loc2))
        if val > best:
            best, witness = val, wit
        if not math.isfinite(best):
            return best, witness
        t1, t2 = float(np.angle(witness[0])), float(np.angle(witness[1]))
        span *= 0.15
    return best, witness


def _phi_sampled_sup(a: OperatorTuple, rho: float, points):
    """sup of ||phi(z)|| over explicit polydisk points (any N)."""
    best, witness = -math.inf, None
    eye = np.eye(a.dim)
    for z in points:
        za = eval_pencil(a, z)
        res = (rho - 1) * za - rho * eye
        smin = float(np.linalg.svd(res, compute_uv=False)[-1])
        if smin <= 1e-12:
            return math.inf, z
        val = float(np.linalg.norm(za @ np.linalg.inv(res), 2))
        if val > best:
            best, witness = val, z
    return best, witness


def tuple_membership_margin(a: OperatorTuple, rho: float, n_theta: int = 128) -> float:
    """Fast polydisk-sup margin (1 - sup||phi||) for a 2-tuple."""
    sup, _ = _phi_polydisk_sup_pair(a, rho, n_theta=n_theta)
    return 1 - sup


def membership_tuple(a: OperatorTuple, rho: float, tol: float = DEFAULT_TOL,
                     budget: int = DEFAULT_BUDGET) -> MembershipVerdict:
    """Decide membership of an operator tuple at level rho.

    N = 1 delegates to the single-operator test.  N = 2 is decided by the
    polydisk supremum of ||phi|| (exact for pairs: the two-variable von
    Neumann inequality makes the polydisk sup control all commuting
    substitutions).  N >= 3 combines the polydisk sup (necessary) with
    sampled commuting tuples; a passing verdict is then NecessaryOnly.
    """
    if rho <= 0:
        raise InputError("rho must be positive")
    if a.n_vars == 1:
        return membership_single(a.mats[0], rho, tol)
    if a.n_vars == 2:
        sup, witness = _phi_polydisk_sup_pair(a, rho)
        margin = 1 - sup
        decision = IN if margin >= -tol else OUT
        cert = {
            "method": "phi-bidisk-sup",
            "theta_points": 128,
            "r_values": [0.9, 0.99, 1 - 1e-4],
            "sup_phi": sup if math.isfinite(sup) else "inf",
            "witness_z": [[z.real, z.imag] for z in np.atleast_1d(np.asarray(witness, dtype=complex))],
            "tol": tol,
        }
        return MembershipVerdict(decision, margin, cert, CERTIFIED)

    # N >= 3: polydisk sampling is necessary-only; Out is still certified
    points = _scalar_torus_points(a.n_vars, max(budget * 4, 128))
    sup, witness = _phi_sampled_sup(a, rho, points)
    margin = 1 - sup
    cert = {
        "method": "phi-polydisk-sample+commuting-substitution",
        "polydisk_points": len(points),
        "budget": budget,
        "tol": tol,
    }
    if margin < -tol:
        cert["witness_z"] = [[z.real, z.imag] for z in np.asarray(witness, dtype=complex)]
        return MembershipVerdict(OUT, margin, cert, CERTIFIED)
    worst = margin
    for sample in sample_commuting_tuples(a.n_vars, budget):
        big = sum(np.kron(ak, ck) for ak, ck in zip(a.mats, sample.base.mats))
        km = kernel_margin(big, rho)
        if km < worst:
            worst = km
        if km < -tol:
            cert["witness_sample_dim"] = sample.base.dim
            return MembershipVerdict(OUT, km, cert, CERTIFIED)
    return MembershipVerdict(IN, worst, cert, NECESSARY_ONLY)


def torus_pencil_sup(a: OperatorTuple, n_points: int = 64) -> float:
    """max ||zeta A|| over sampled torus points."""
    best = 0.0
    for z in _scalar_torus_points(a.n_vars, n_points, radius=1.0):
        best = max(best, float(np.linalg.norm(eval_pencil(a, z), 2)))
    return best


def w_rho_tuple(a: OperatorTuple, rho: float, width: float = DEFAULT_WIDTH,
                budget: int = 16, tol: float = DEFAULT_TOL) -> RadiusReport:
    """Tuple radius bracket via sup over commuting substitutions.

    Lower bound: max of w_rho over sampled substitutions (scalar polydisk
    points always included).  Upper bound: bisection over the tuple
    membership test; certified for N <= 2, necessary-only for N >= 3.
    """
    if rho <= 0:
        raise InputError("rho must be positive")
    start = time.perf_counter()
    if a.n_vars == 1:
        return w_rho(a.mats[0], rho, width, tol)

    norm_sum = sum(op_norm(m) for m in a.mats)
    grid_spec = {"budget": budget, "width": width, "tol": tol}
    if norm_sum == 0.0:
        return RadiusReport(0.0, 0.0, "tuple-bisection", grid_spec, time.perf_counter() - start)

    lower = 0.0
    for z in _scalar_torus_points(a.n_vars, max(8, budget)):
        rep = w_rho(eval_pencil(a, z), rho, width, tol)
        lower = max(lower, rep.lo)
    for sample in sample_commuting_tuples(a.n_vars, budget, dims=(2, 3)):
        big = sum(np.kron(ak, ck) for ak, ck in zip(a.mats, sample.base.mats))
        rep = w_rho(big, rho, width, tol)
        lower = max(lower, rep.lo)

    if a.n_vars == 2:
        feasible = lambda u: tuple_membership_margin(a.scale(1.0 / u), rho, n_theta=64) >= -tol
        method = "tuple-bisection-phi-sup"
    else:
        points = _scalar_torus_points(a.n_vars, max(budget * 4, 128))
        samples = sample_commuting_tuples(a.n_vars, budget, dims=(2, 3))

        def feasible(u):
            scaled = a.scale(1.0 / u)
            sup, _ = _phi_sampled_sup(scaled, rho, points)
            if 1 - sup < -tol:
                return False
            for sample in samples:
                big = sum(np.kron(ak, ck) for ak, ck in zip(scaled.mats, sample.base.mats))
                if kernel_margin(big, rho) < -tol:
                    return False
            return True

        method = "tuple-bisection-necessary-only"

    lo = max(lower, torus_pencil_sup(a) / rho)
    hi = max(lo * (1 + 1e-12), norm_sum * max(1.0, 2.0 / rho - 1.0))
    rep = _bisect_radius(norm_sum, lo, hi, feasible, width, method, grid_spec)
    return RadiusReport(rep.lo, rep.hi, method, grid_spec, time.perf_counter() - start)


def tuple_numerical_radius(a: OperatorTuple, budget: int = DEFAULT_BUDGET) -> float:
    """Lower bound on sup over commuting substitutions of w(A (x) C)."""
    best = 0.0
    for z in _scalar_torus_points(a.n_vars, max(16, budget // 2)):
        best = max(best, numerical_radius(eval_pencil(a, z)))
    for sample in sample_commuting_tuples(a.n_vars, budget):
        big = sum(np.kron(ak, ck) for ak, ck in zip(a.mats, sample.base.mats))
        best = max(best, numerical_radius(big))
    return best


def tuple_spectral_radius(a: OperatorTuple, n_max: int = 32, budget: int = DEFAULT_BUDGET) -> float:
    """Estimate of the tuple spectral radius via n_max-th norm roots."""
    if n_max < 8:
        raise InputError("n_max must be >= 8")
    best = 0.0
    for z in _scalar_torus_points(a.n_vars, max(16, budget // 2)):
        p = np.linalg.matrix_power(eval_pencil(a, z), n_max)
        nrm = float(np.linalg.norm(p, 2))
        best = max(best, nrm ** (1.0 / n_max) if nrm > 0 else 0.0)
    for sample in sample_commuting_tuples(a.n_vars, budget):
        big = sum(np.kron(ak, ck) for ak, ck in zip(a.mats, sample.base.mats))
        p = np.linalg.matrix_power(big, n_max)
        nrm = float(np.linalg.norm(p, 2))
        best = max(best, nrm ** (1.0 / n_max) if nrm > 0 else 0.0)
    return best
