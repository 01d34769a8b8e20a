"""Dual transforms on the one-dimensional groups R, Z and T.

Norms on R are given by a profile omega on [0, inf); the norm is
p(t) = omega(|t|).  Under the standard identification of the dual of R with R,

    p'(t) = sup_{s in (0, 1/2]} s / omega(s / t),

which is evaluated here by a grid scan, a few rounds of local re-gridding and
a final golden-section search.  Quasi-concave profiles (omega increasing,
omega(t)/t non-increasing) are exactly the reflexive ones, and for them the
closed form p'(t) = 1 / (2 omega(1 / (2t))) holds.

Everything here is binary64 with explicit tolerances.  The exact finite
engine lives in :mod:`metricdual.quasinorm`.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import floor

import numpy as np

from .errors import InputError, NotQuasiConcaveError

__all__ = [
    "TransformConfig", "RealNorm", "ZNorm", "TNorm", "QCResult", "BidualReport",
    "circle_norm", "real_dual", "real_dual_closed", "real_bidual", "is_quasiconcave",
    "real_bidual_fixpoint", "tabulate_dual", "z_dual_at", "t_dual_at", "ball_lipschitz_bound",
]

GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class TransformConfig:
    grid: int = 4096
    refinements: int = 3
    rtol: float = 1e-6
    refine_points: int = 33
    golden_iters: int = 60
    probe_min: float = 1e-6
    probe_max: float = 1e6
    probes: int = 1201
    # shared geometric lattice for nested (bidual) transforms
    lattice_per_decade: int = 128
    lattice_decades: int = 6
    fixpoint_min: float = 1e-2
    fixpoint_max: float = 1e2
    z_max_terms: int = 1_000_000
    chunk: int = 256

    def __post_init__(self):
        if min(self.grid, self.refine_points, self.probes, self.lattice_per_decade) < 2:
            raise InputError("grid sizes must be at least 2")
        if self.refinements < 0 or self.golden_iters < 0:
            raise InputError("refinement depth must be nonnegative")
        if not self.rtol > 0:
            raise InputError("tolerance must be positive")

    def probe_grid(self):
        return np.geomspace(self.probe_min, self.probe_max, self.probes)


DEFAULT = TransformConfig()


class RealNorm:
    """Monotone subadditive profile omega on [0, inf).

    Families: ``power(alpha)`` t**alpha with 0 < alpha <= 1, ``linear(c)`` c*t,
    ``log1p(scale)`` log(1 + t/scale), and ``table(points, slope)``: linear
    interpolation through ``points`` (starting at (0, 0)) continued with
    ``slope`` past the last breakpoint.  ``factor`` multiplies the profile.
    """

    def __init__(self, family, params, factor=1.0):
        self.family = family
        self.params = dict(params)
        self.factor = float(factor)
        if not self.factor > 0:
            raise InputError("scale factor must be positive")
        if family == "power":
            a = float(self.params["alpha"])
            if not 0 < a <= 1:
                raise InputError(f"power exponent must lie in (0, 1], got {a}")
        elif family == "linear":
            if not float(self.params["slope"]) > 0:
                raise InputError("linear slope must be positive")
        elif family == "log1p":
            if not float(self.params.get("scale", 1.0)) > 0:
                raise InputError("log1p scale must be positive")
        elif family == "table":
            pts = np.asarray(self.params["points"], dtype=float)
            if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 2:
                raise InputError("table needs at least two (t, value) points")
            if pts[0, 0] != 0 or pts[0, 1] != 0:
                raise InputError("table must start at (0, 0)")
            if np.any(np.diff(pts[:, 0]) <= 0):
                raise InputError("table breakpoints must be strictly increasing")
            if not float(self.params.get("slope", 0.0)) > 0:
                raise InputError("table extension slope must be positive (properness)")
            self._t = pts[:, 0]
            self._v = pts[:, 1]
        else:
            raise InputError(f"unknown family {family!r}")

    @classmethod
    def power(cls, alpha):
        return cls("power", {"alpha": alpha})

    @classmethod
    def linear(cls, slope=1.0):
        return cls("linear", {"slope": slope})

    @classmethod
    def log1p(cls, scale=1.0):
        return cls("log1p", {"scale": scale})

    @classmethod
    def table(cls, points, slope):
        return cls("table", {"points": [list(p) for p in points], "slope": slope})

    def scaled(self, c):
        return RealNorm(self.family, self.params, self.factor * c)

    def __repr__(self):
        extra = "" if self.factor == 1 else f", factor={self.factor}"
        return f"RealNorm({self.family!r}, {self.params}{extra})"

    def __call__(self, t):
        t = np.abs(np.asarray(t, dtype=float))
        if self.family == "power":
            out = t ** float(self.params["alpha"])
        elif self.family == "linear":
            out = float(self.params["slope"]) * t
        elif self.family == "log1p":
            out = np.log1p(t / float(self.params.get("scale", 1.0)))
        else:
            slope = float(self.params["slope"])
            out = np.where(t <= self._t[-1], np.interp(t, self._t, self._v),
                           self._v[-1] + slope * (t - self._t[-1]))
        return self.factor * out

    def validate(self, cfg=DEFAULT):
        """Raise :class:`InputError` naming the failed property and a probe pair."""
        if self(0.0) != 0:
            raise InputError("omega(0) must be 0")
        probes = cfg.probe_grid()
        if self.family == "table":
            probes = np.unique(np.concatenate([probes, self._t[1:]]))
        w = self(probes)
        if np.any(w <= 0):
            i = int(np.argmax(w <= 0))
            raise InputError(f"omega vanishes at t={probes[i]:.6g} > 0")
        drops = np.nonzero(np.diff(w) < -1e-12 * np.abs(w[1:]))[0]
        if len(drops):
            i = drops[0]
            raise InputError(f"omega not monotone between t={probes[i]:.6g} and t={probes[i + 1]:.6g}")
        sub = probes[:: max(1, len(probes) // 160)]
        if self.family == "table":
            sub = np.unique(np.concatenate([sub, self._t[1:], self._t[1:] / 2]))
        S, T = np.meshgrid(sub, sub, indexing="ij")
        lhs = self(S + T)
        rhs = self(S) + self(T)
        bad = np.argwhere(lhs > rhs * (1 + 1e-12) + 1e-15)
        if len(bad):
            i, j = bad[0]
            raise InputError(f"omega not subadditive at s={sub[i]:.6g}, t={sub[j]:.6g}")
        # every family diverges by construction (alpha > 0, slopes > 0); this
        # only guards against a profile that has stopped growing numerically
        if not self(cfg.probe_max) > self(cfg.probe_max / 10):
            raise InputError("omega is not proper: no growth at the top of the probe range")
        self._validated = True
        return self


def _ensure_valid(omega, cfg):
    # profiles are validated once; other callables are taken on trust
    if isinstance(omega, RealNorm) and not getattr(omega, "_validated", False):
        omega.validate(cfg)


def _ratio(omega, s, t):
    return s / omega(s / t)


def _golden_max(f, a, b, iters):
    """Vectorised golden-section maximisation of f on [a, b] (arrays)."""
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    best = np.maximum(fc, fd)
    for _ in range(iters):
        left = fc >= fd
        a, b = np.where(left, a, c), np.where(left, d, b)
        c, d = (np.where(left, b - GOLDEN * (b - a), d),
                np.where(left, c, a + GOLDEN * (b - a)))
        fx = f(np.where(left, c, d))
        fc, fd = np.where(left, fx, fd), np.where(left, fc, fx)
        best = np.maximum(best, fx)
    return best


def _sup_on_half(f, t, cfg):
    """sup over s in (0, 1/2] of f(s, t) for each t in a 1-D array."""
    n = cfg.grid
    base = np.unique(np.concatenate([
        np.arange(1, n + 1) / (2.0 * n),
        np.geomspace(1e-9, 0.5, max(16, n // 8)),
    ]))
    out = np.empty_like(t)
    for lo in range(0, len(t), cfg.chunk):
        tt = t[lo:lo + cfg.chunk][:, None]
        F = f(base[None, :], tt)
        idx = np.argmax(F, axis=1)
        best = F[np.arange(len(idx)), idx]
        a = base[np.maximum(idx - 1, 0)]
        b = base[np.minimum(idx + 1, len(base) - 1)]
        for _ in range(cfg.refinements):
            frac = np.linspace(0.0, 1.0, cfg.refine_points)
            S = a[:, None] + (b - a)[:, None] * frac[None, :]
            F = f(S, tt)
            k = np.argmax(F, axis=1)
            rows = np.arange(len(k))
            best = np.maximum(best, F[rows, k])
            step = (b - a) / (cfg.refine_points - 1)
            centre = S[rows, k]
            a = np.maximum(centre - step, a)
            b = np.minimum(centre + step, 0.5)
        if cfg.golden_iters:
            g = _golden_max(lambda s: f(s, tt[:, 0]), a, b, cfg.golden_iters)
            best = np.maximum(best, g)
        out[lo:lo + cfg.chunk] = best
    return out


def _as_positive_array(t):
    arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(~(arr > 0)):
        raise InputError("t must be positive")
    return arr


def real_dual(omega, t, cfg=DEFAULT):
    """Numerical dual profile at t > 0 (scalar or array)."""
    _ensure_valid(omega, cfg)
    scalar = np.ndim(t) == 0
    arr = _as_positive_array(t)
    vals = _sup_on_half(lambda s, tt: _ratio(omega, s, tt), arr.ravel(), cfg)
    vals = vals.reshape(arr.shape)
    return float(vals[0]) if scalar else vals


class DualProfile:
    """The numerically computed dual of a profile, usable as a profile itself."""

    def __init__(self, omega, cfg=DEFAULT):
        self.omega = omega
        self.cfg = cfg

    def __call__(self, t):
        t = np.abs(np.asarray(t, dtype=float))
        out = np.zeros_like(t)
        pos = t > 0
        if np.any(pos):
            out[pos] = real_dual(self.omega, t[pos], self.cfg)
        return out

    def __repr__(self):
        return f"DualProfile({self.omega!r})"


def tabulate_dual(omega, cfg=DEFAULT):
    return DualProfile(omega, cfg)


@dataclass(frozen=True)
class QCResult:
    ok: bool
    witness: tuple | None = None
    reason: str | None = None

    def __bool__(self):
        return self.ok


def _qc_check(t, w, rtol=1e-9):
    drops = np.nonzero(w[1:] < w[:-1] * (1 - rtol))[0]
    if len(drops):
        i = drops[0]
        return QCResult(False, (float(t[i]), float(t[i + 1])), "not monotone increasing")
    ratio = w / t
    rises = np.nonzero(ratio[1:] > ratio[:-1] * (1 + rtol))[0]
    if len(rises):
        i = rises[0]
        return QCResult(False, (float(t[i]), float(t[i + 1])), "omega(t)/t increases")
    return QCResult(True)


def is_quasiconcave(omega, cfg=DEFAULT):
    """Check monotonicity of omega and of omega(t)/t on a geometric probe grid.

    The witness is the first adjacent probe pair where either test fails.
    """
    t = cfg.probe_grid()
    if isinstance(omega, RealNorm) and omega.family == "table":
        t = np.unique(np.concatenate([t, omega._t[1:]]))
    return _qc_check(t, np.asarray(omega(t), dtype=float))


def real_dual_closed(omega, t, cfg=DEFAULT):
    """Closed-form dual 1 / (2 omega(1 / (2t))), valid for quasi-concave profiles only."""
    qc = is_quasiconcave(omega, cfg)
    if not qc:
        raise NotQuasiConcaveError(f"profile is not quasi-concave: {qc.reason} on {qc.witness}")
    arr = _as_positive_array(t)
    vals = 1.0 / (2.0 * np.asarray(omega(1.0 / (2.0 * arr)), dtype=float))
    return float(vals[0]) if np.ndim(t) == 0 else vals.reshape(np.shape(t))


def real_bidual(omega, t, cfg=DEFAULT):
    """Dual of the numerical dual at t, using the geometric outer grid s_j = r**-j / 2."""
    arr = _as_positive_array(t)
    K, J = cfg.lattice_per_decade, cfg.lattice_per_decade * cfg.lattice_decades
    s = 0.5 * 10.0 ** (-np.arange(J + 1) / K)
    args = s[None, :] / arr.ravel()[:, None]
    inner = real_dual(omega, args.ravel(), cfg).reshape(args.shape)
    vals = (s[None, :] / inner).max(axis=1)
    return float(vals[0]) if np.ndim(t) == 0 else vals.reshape(np.shape(t))


@dataclass
class BidualReport:
    """Outcome of the double-dual comparison on the probe lattice r**k."""

    probes: np.ndarray
    omega: np.ndarray
    dual: np.ndarray
    bidual: np.ndarray
    tridual: np.ndarray
    quasiconcave: bool
    max_rel_deviation: float
    bidual_quasiconcave: bool
    bidual_below: bool
    dual_gap: float
    tolerance: float

    @property
    def ok(self):
        if self.quasiconcave:
            return self.max_rel_deviation <= self.tolerance
        return self.bidual_quasiconcave and self.bidual_below and self.dual_gap <= self.tolerance


def real_bidual_fixpoint(omega, cfg=DEFAULT, tol=None):
    """Compare omega with its numerical double dual.

    All probes are lattice points t = r**k with r = 10**(1/K).  Outer duals
    then only need the inner dual at lattice points (A_i = r**i, B_i = r**i / 2),
    so each inner value is computed once by :func:`real_dual` and reused:

        dual of f on B, read at A_k:  max_j s_j / f(B_{-j-k})
        dual of f on A, read at B_m:  max_j s_j / f(A_{-j-m})

    with s_j = r**-j / 2 for j = 0..J.
    """
    tol = cfg.rtol if tol is None else tol
    K = cfg.lattice_per_decade
    J = K * cfg.lattice_decades
    k_lo = int(round(np.log10(cfg.fixpoint_min) * K))
    k_hi = int(round(np.log10(cfg.fixpoint_max) * K))
    ks = np.arange(k_lo, k_hi + 1)
    r = 10.0 ** (1.0 / K)
    s = 0.5 * r ** (-np.arange(J + 1, dtype=float))

    a_idx = np.arange(k_lo - J, k_hi + J + 1)
    b_idx = np.arange(-J - k_hi, -k_lo + 1)
    d_A = dict(zip(a_idx.tolist(), real_dual(omega, r ** a_idx.astype(float), cfg)))
    d_B = dict(zip(b_idx.tolist(), real_dual(omega, 0.5 * r ** b_idx.astype(float), cfg)))

    jj = np.arange(J + 1)

    def dual_A_vec(f_B):
        out = np.empty(len(ks))
        for n, k in enumerate(ks):
            vals = np.array([f_B[int(i)] for i in (-jj - k)])
            out[n] = np.max(s / vals)
        return out

    bi_A = dual_A_vec(d_B)
    bi_B = {}
    for m in b_idx.tolist():
        vals = np.array([d_A[int(i)] for i in (-jj - m)])
        bi_B[m] = float(np.max(s / vals))
    tri_A = dual_A_vec(bi_B)

    t = r ** ks.astype(float)
    w = np.asarray(omega(t), dtype=float)
    d_on_A = np.array([d_A[int(k)] for k in ks])
    dev = np.abs(bi_A - w) / w
    qc = bool(is_quasiconcave(omega, cfg))
    return BidualReport(
        probes=t, omega=w, dual=d_on_A, bidual=bi_A, tridual=tri_A,
        quasiconcave=qc,
        max_rel_deviation=float(dev.max()),
        bidual_quasiconcave=bool(_qc_check(t, bi_A, rtol=tol)),
        bidual_below=bool(np.all(bi_A <= w * (1 + tol))),
        dual_gap=float(np.max(np.abs(tri_A - d_on_A) / d_on_A)),
        tolerance=tol,
    )


def circle_norm(x):
    """lambda on R/Z: distance to the nearest integer (float, vectorised)."""
    x = np.asarray(x, dtype=float)
    d = x - np.floor(x)
    return np.minimum(d, 1.0 - d)


def _circle_norm_exact(theta):
    d = theta - floor(theta)
    return min(d, 1 - d)


class ZNorm:
    """A symmetric norm on the integers given by its values on k >= 0.

    ``envelope(K)`` must return min over |k| > K of the norm; by default the
    norm is assumed monotone in |k| and the envelope is value(K + 1).
    """

    def __init__(self, value, envelope=None, name="custom"):
        self.value = value
        self.envelope = envelope if envelope is not None else (lambda K: value(K + 1))
        self.name = name

    @classmethod
    def absolute(cls, c=1):
        c = Fraction(c)
        return cls(lambda k: c * abs(k), lambda K: c * (K + 1), name=f"{c}|k|")

    def __call__(self, k):
        return self.value(abs(int(k)))

    def validate(self, probes=64):
        if self(0) != 0:
            raise InputError("norm on Z must vanish at 0")
        for a in range(1, probes + 1):
            if not self(a) > 0:
                raise InputError(f"norm on Z vanishes at k={a}")
            for b in range(1, probes + 1):
                if self(a + b) > self(a) + self(b) or self(a - b) > self(a) + self(b):
                    raise InputError(f"norm on Z not subadditive at k={a}, l={b}")
        return self


class TNorm:
    """A norm on the circle R/Z given on [0, 1/2] and extended by p(x) = p(1 - x)."""

    def __init__(self, func, resolution=4096, name="custom"):
        self.func = func
        self.resolution = resolution
        self.name = name

    @classmethod
    def canonical(cls, c=1.0):
        c = float(c)
        if not c > 0:
            raise InputError("canonical circle norm needs c > 0")
        return cls(lambda x: c * circle_norm(x), name=f"{c}*lambda")

    def __call__(self, x):
        return self.func(circle_norm(x))

    def validate(self):
        th = np.arange(0, self.resolution + 1) / (2.0 * self.resolution)
        v = np.asarray(self(th), dtype=float)
        if v[0] != 0:
            raise InputError("circle norm must vanish at 0")
        if np.any(v[1:] <= 0):
            raise InputError("circle norm vanishes off 0")
        sub = th[:: max(1, len(th) // 128)]
        A, B = np.meshgrid(sub, sub, indexing="ij")
        lhs = np.asarray(self(A + B), dtype=float)
        rhs = np.asarray(self(A), dtype=float) + np.asarray(self(B), dtype=float)
        bad = np.argwhere(lhs > rhs * (1 + 1e-12) + 1e-15)
        if len(bad):
            i, j = bad[0]
            raise InputError(f"circle norm not subadditive at {sub[i]:.6g}, {sub[j]:.6g}")
        return self


def z_dual_at(p, theta, cfg=DEFAULT):
    """sup over k != 0 of lambda(k theta) / p(k), for rational theta in [0, 1/2].

    Enumeration stops at K once envelope(K) > 1 / (2 best): every later term
    is at most (1/2) / p(k) < best.  With exact norm values the result is an
    exact Fraction.
    """
    theta = Fraction(theta)
    if not 0 <= theta <= Fraction(1, 2):
        raise InputError("theta must lie in [0, 1/2]")
    if theta == 0:
        return Fraction(0)
    best = 0
    for k in range(1, cfg.z_max_terms + 1):
        lam = _circle_norm_exact(k * theta)
        if lam:
            v = p(k)
            term = lam / v if isinstance(v, (int, Fraction)) else float(lam) / v
            if term > best:
                best = term
        if best > 0 and p.envelope(k) > 1 / (2 * best):
            return best
    raise InputError("norm on Z is not proper: truncation bound never reached")


def t_dual_at(p, k, cfg=DEFAULT):
    """sup over theta in (0, 1/2] of lambda(k theta) / p(theta)."""
    k = int(k)
    if k == 0:
        return 0.0
    f = lambda th, _k: circle_norm(k * th) / np.asarray(p(th), dtype=float)
    return float(_sup_on_half(f, np.array([float(abs(k))]), cfg)[0])


def ball_lipschitz_bound(r):
    """Bound 1/(2r) on the dual value of a character mapping B_p(r) into the closed 1/4-ball of T.

    If every x with p(x) < r has lambda(chi(x)) <= 1/4, then for 0 < p(x) < r
    and N the largest integer with N p(x) < r, the multiples jx (j <= N) stay in
    the ball, so lambda(chi(x)^N) = N lambda(chi(x)) <= 1/4 and
    (N + 1) p(x) >= r give lambda(chi(x)) / p(x) <= (N + 1) / (4 N r) <= 1/(2r).
    Points with p(x) >= r contribute at most (1/2) / r.
    """
    if isinstance(r, (int, Fraction)):
        r = Fraction(r)
        if r <= 0:
            raise InputError("radius must be positive")
        return 1 / (2 * r)
    r = float(r)
    if not r > 0:
        raise InputError("radius must be positive")
    return 1.0 / (2.0 * r)
