"""Planar norms: evaluation, directional geometry, and convexity/smoothness probes.

A norm is described by a :class:`NormSpec` value; every other function in the
package takes the spec as its first argument and stays pure.  The supported
families are the Euclidean norm, the lp norms (p >= 1), l1, linf, and the
"inflated l1" norm

    |(x, y)| = delta*sqrt(alpha^2 x^2 + y^2) + (1 - alpha*delta)*|x| + (1 - delta)*|y|

whose unit ball keeps the four l1 corners but bulges the edges outward
asymmetrically, making it rotund while staying non-smooth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InternalInvariantError, UnsupportedNormOperation

__all__ = [
    "NormSpec",
    "SmoothnessConstants",
    "norm_components",
    "norm_value",
    "unit_circle",
    "tangent_direction",
    "tangent_normals",
    "directions_equivalent",
    "estimate_convexity_modulus",
    "estimate_smoothness_constants",
]

_KINDS = ("euclidean", "lp", "l1", "linf", "inflated_l1")


@dataclass(frozen=True)
class NormSpec:
    """A parameterized norm on the plane.

    ``smooth`` and ``rotund`` are derived classifications:

    ==============  ======  ======
    kind            smooth  rotund
    ==============  ======  ======
    euclidean       yes     yes
    lp, 1 < p       yes     yes
    lp, p = 1       no      no
    l1 / linf       no      no
    inflated_l1     no      yes
    ==============  ======  ======

    The inflated norm stays non-smooth because the four l1 corners survive
    the inflation, and is rotund because of its strictly convex summand.
    """

    kind: str
    p: float | None = None
    alpha: float | None = None
    delta: float | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"unknown norm kind {self.kind!r}")
        if self.kind == "lp":
            if self.p is None or not math.isfinite(self.p) or self.p < 1.0:
                raise DomainError(f"lp norm needs finite p >= 1, got {self.p!r}")
        elif self.kind == "inflated_l1":
            a, d = self.alpha, self.delta
            if a is None or d is None or not (0.0 < a < 1.0) or not (0.0 < d < 1.0):
                raise DomainError(
                    f"inflated_l1 needs alpha, delta in (0, 1), got {a!r}, {d!r}"
                )
        elif self.p is not None or self.alpha is not None or self.delta is not None:
            raise DomainError(f"{self.kind} norm takes no parameters")

    # -- constructors ------------------------------------------------------

    @classmethod
    def euclidean(cls) -> "NormSpec":
        return cls("euclidean")

    @classmethod
    def lp(cls, p: float) -> "NormSpec":
        return cls("lp", p=float(p))

    @classmethod
    def l1(cls) -> "NormSpec":
        return cls("l1")

    @classmethod
    def linf(cls) -> "NormSpec":
        return cls("linf")

    @classmethod
    def inflated_l1(cls, alpha: float, delta: float) -> "NormSpec":
        return cls("inflated_l1", alpha=float(alpha), delta=float(delta))

    # -- derived classification -------------------------------------------

    @property
    def smooth(self) -> bool:
        if self.kind == "euclidean":
            return True
        if self.kind == "lp":
            return self.p > 1.0
        return False

    @property
    def rotund(self) -> bool:
        if self.kind == "euclidean" or self.kind == "inflated_l1":
            return True
        if self.kind == "lp":
            return self.p > 1.0
        return False

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        if self.kind == "lp":
            d["p"] = self.p
        elif self.kind == "inflated_l1":
            d["alpha"] = self.alpha
            d["delta"] = self.delta
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "NormSpec":
        if not isinstance(d, dict) or "kind" not in d:
            raise DomainError(f"norm spec must be a mapping with a 'kind' key, got {d!r}")
        kind = d["kind"]
        extra = {k: v for k, v in d.items() if k != "kind"}
        wanted = {"lp": ("p",), "inflated_l1": ("alpha", "delta")}.get(kind, ())
        if sorted(extra) != sorted(wanted):
            raise DomainError(
                f"norm kind {kind!r} takes parameters {sorted(wanted)}, got {sorted(extra)}"
            )
        if kind == "lp":
            return cls.lp(extra["p"])
        if kind == "inflated_l1":
            return cls.inflated_l1(extra["alpha"], extra["delta"])
        return cls(kind)


def norm_components(spec: NormSpec, dx, dy):
    """Evaluate the norm on component arrays (any matching shapes).

    This is the single evaluation kernel shared by every distance computation
    in the package, so that pruned and brute-force paths produce bitwise
    identical floats.  All supported norms are absolute and monotone in
    (|dx|, |dy|), which the raster pruning relies on.
    """
    dx = np.asarray(dx, dtype=np.float64)
    dy = np.asarray(dy, dtype=np.float64)
    if dx.ndim == 0 and dy.ndim == 0:
        # scalar pow and array pow in numpy differ by an ulp on some inputs;
        # force the array code path so results are shape-independent
        return _norm_arrays(spec, dx.reshape(1), dy.reshape(1))[0]
    return _norm_arrays(spec, dx, dy)


def _norm_arrays(spec: NormSpec, dx, dy):
    kind = spec.kind
    if kind == "euclidean":
        return np.sqrt(dx * dx + dy * dy)
    if kind == "l1":
        return np.abs(dx) + np.abs(dy)
    if kind == "linf":
        return np.maximum(np.abs(dx), np.abs(dy))
    if kind == "lp":
        p = spec.p
        if p == 2.0:
            return np.sqrt(dx * dx + dy * dy)
        if p == 1.0:
            return np.abs(dx) + np.abs(dy)
        if p == 4.0:
            x2 = dx * dx
            y2 = dy * dy
            return np.sqrt(np.sqrt(x2 * x2 + y2 * y2))
        ax = np.abs(dx)
        ay = np.abs(dy)
        return (ax**p + ay**p) ** (1.0 / p)
    # inflated_l1
    a = spec.alpha
    d = spec.delta
    sx = a * dx
    return d * np.sqrt(sx * sx + dy * dy) + (1.0 - a * d) * np.abs(dx) + (1.0 - d) * np.abs(dy)


def _as_vec(v) -> np.ndarray:
    arr = np.asarray(v, dtype=np.float64).reshape(-1)
    if arr.shape != (2,):
        raise DomainError(f"expected a 2-vector, got shape {np.shape(v)}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"vector components must be finite, got {v!r}")
    return arr


def norm_value(spec: NormSpec, v) -> float:
    """Norm of a single vector ``v`` (any 2-element sequence)."""
    arr = _as_vec(v)
    return float(norm_components(spec, arr[0], arr[1]))


def unit_circle(spec: NormSpec, n: int) -> np.ndarray:
    """``n`` unit vectors of the norm, shape (n, 2).

    Sampled by a uniform angular sweep followed by radial normalization, so
    the output is deterministic for a given ``n``.
    """
    if n < 3:
        raise DomainError(f"need at least 3 directions, got {n}")
    theta = np.arange(n) * (2.0 * np.pi / n)
    d = np.column_stack([np.cos(theta), np.sin(theta)])
    r = norm_components(spec, d[:, 0], d[:, 1])
    return d / r[:, None]


def tangent_normals(spec: NormSpec, pts: np.ndarray) -> np.ndarray:
    """Outward Euclidean-unit normals of the norm ball at each row of ``pts``.

    Computed by central finite differences of the norm with per-point step
    1e-6 * |pt|; this is the contract even for norms with known analytic
    gradients.  Requires a smooth norm and nonzero points.
    """
    if not spec.smooth:
        raise UnsupportedNormOperation(
            f"tangent direction undefined for non-smooth norm {spec.kind!r}"
        )
    pts = np.atleast_2d(np.asarray(pts, dtype=np.float64))
    r = norm_components(spec, pts[:, 0], pts[:, 1])
    if np.any(r == 0.0) or not np.all(np.isfinite(pts)):
        raise DomainError("tangent direction needs nonzero finite points")
    h = 1e-6 * r
    gx = (
        norm_components(spec, pts[:, 0] + h, pts[:, 1])
        - norm_components(spec, pts[:, 0] - h, pts[:, 1])
    ) / (2.0 * h)
    gy = (
        norm_components(spec, pts[:, 0], pts[:, 1] + h)
        - norm_components(spec, pts[:, 0], pts[:, 1] - h)
    ) / (2.0 * h)
    g = np.column_stack([gx, gy])
    return g / np.sqrt(gx * gx + gy * gy)[:, None]


def tangent_direction(spec: NormSpec, a) -> np.ndarray:
    """Outward unit normal of the supporting halfspace of B(0, |a|) at ``a``."""
    arr = _as_vec(a)
    if arr[0] == 0.0 and arr[1] == 0.0:
        raise DomainError("tangent direction undefined at the origin")
    return tangent_normals(spec, arr[None, :])[0]


def directions_equivalent(spec: NormSpec, a, b, tol: float = 1e-9) -> bool:
    """Whether ``a`` and ``b`` share a supporting halfspace direction.

    Two nonzero vectors are equivalent exactly when the triangle inequality
    is tight on them: |a + b| = |a| + |b|.  Floating point needs a band, so
    equality is accepted up to ``tol * (|a| + |b|)``.
    """
    va, vb = _as_vec(a), _as_vec(b)
    na, nb = norm_value(spec, va), norm_value(spec, vb)
    if na == 0.0 or nb == 0.0:
        raise DomainError("direction equivalence undefined for the zero vector")
    ns = norm_value(spec, va + vb)
    return bool(ns >= na + nb - tol * (na + nb))


def estimate_convexity_modulus(spec: NormSpec, eps_sep: float, n_samples: int) -> float:
    """Sampled uniform-convexity modulus mu(eps_sep).

    Minimum of 1 - |(x+y)/2| over sampled unit pairs with |x - y| >= eps_sep,
    clamped at zero.  Zero for norms whose unit sphere contains a segment of
    length >= eps_sep (e.g. l1).
    """
    if not (0.0 < eps_sep <= 2.0):
        raise DomainError(f"eps_sep must be in (0, 2], got {eps_sep}")
    if n_samples < 100:
        raise DomainError(f"need n_samples >= 100, got {n_samples}")
    u = unit_circle(spec, n_samples)
    best = np.inf
    for lo in range(0, n_samples, 256):
        chunk = u[lo : lo + 256]
        dx = chunk[:, 0][:, None] - u[:, 0][None, :]
        dy = chunk[:, 1][:, None] - u[:, 1][None, :]
        sep = norm_components(spec, dx, dy)
        mx = (chunk[:, 0][:, None] + u[:, 0][None, :]) * 0.5
        my = (chunk[:, 1][:, None] + u[:, 1][None, :]) * 0.5
        mid = norm_components(spec, mx, my)
        ok = sep >= eps_sep
        if np.any(ok):
            best = min(best, float(np.min(1.0 - mid[ok])))
    if not np.isfinite(best):
        return 0.0
    return max(best, 0.0)


@dataclass(frozen=True)
class SmoothnessConstants:
    """Constants witnessing that near-tight triangle pairs are almost straight.

    For all unit u, v:  |u + v| > 2 - beta  implies  |u - alpha*v| <= 1.
    ``sigma`` is the minimum angle between a unit vector and the complement of
    its supporting open halfspace.
    """

    alpha: float
    beta: float
    sigma: float


def estimate_smoothness_constants(spec: NormSpec, n_samples: int) -> SmoothnessConstants:
    """Estimate (alpha, beta, sigma) for a smooth norm by an angular sweep.

    sigma is minimized over sampled unit vectors; alpha over pairs (u, v)
    with v in the sigma/2 cone around u's normal (chord length cut from the
    line u - t*v, found by bisection); beta over the complementary pairs as
    2 - |u + v|.  All three come out strictly positive for smooth norms.
    """
    if not spec.smooth:
        raise UnsupportedNormOperation(
            f"smoothness constants undefined for non-smooth norm {spec.kind!r}"
        )
    if n_samples < 360:
        raise DomainError(f"need n_samples >= 360, got {n_samples}")

    u = unit_circle(spec, n_samples)
    normals = tangent_normals(spec, u)
    ue = u / np.sqrt(u[:, 0] ** 2 + u[:, 1] ** 2)[:, None]
    cosang = np.clip(np.sum(ue * normals, axis=1), -1.0, 1.0)
    sigma = float(np.min(np.pi / 2.0 - np.arccos(cosang)))
    if sigma <= 0.0:
        raise InternalInvariantError(f"non-positive sigma for smooth norm {spec}")

    # v is "in the cone" of u when its angle to the closed complement halfspace
    # is >= sigma/2, i.e. its Euclidean angle to u's normal is <= pi/2 - sigma/2.
    # Both minimizations widen past the split by a guard band: a sampled minimum
    # over the exact cone overshoots the infimum by O(sweep step), which would
    # let resampled pairs just past the boundary break the almost-straight
    # implication.  The band keeps the returned constants conservative.
    thresh = np.pi / 2.0 - sigma / 2.0
    margin = min(8.0 * (2.0 * np.pi / n_samples), sigma / 4.0)
    alpha = np.inf
    beta = np.inf
    for lo in range(0, n_samples, 128):
        nrm = normals[lo : lo + 128]
        uu = u[lo : lo + 128]
        cosv = np.clip(ue @ nrm.T, -1.0, 1.0).T  # (chunk, n): angle(v_j, n_i)
        angv = np.arccos(cosv)
        in_cone = angv <= thresh + margin
        out_cone = angv >= thresh - margin
        ii, jj = np.nonzero(in_cone)
        if ii.size:
            a = _chord_lengths(spec, uu[ii], u[jj])
            alpha = min(alpha, float(np.min(a)))
        ii, jj = np.nonzero(out_cone)
        if ii.size:
            s = norm_components(spec, uu[ii, 0] + u[jj, 0], uu[ii, 1] + u[jj, 1])
            beta = min(beta, float(np.min(2.0 - s)))
    if not (alpha > 0.0 and beta > 0.0):
        raise InternalInvariantError(
            f"non-positive smoothness constants for {spec}: alpha={alpha}, beta={beta}"
        )
    return SmoothnessConstants(alpha=alpha, beta=beta, sigma=sigma)


def _chord_lengths(spec: NormSpec, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Positive roots t of |u - t*v| = 1 for unit rows u, v, by bisection.

    {t >= 0 : |u - t*v| <= 1} is an interval starting at 0, so bisection on
    the predicate converges to its right endpoint.  |u - 2.5*v| >= 1.5 > 1
    bounds the root from above.
    """
    lo = np.zeros(len(u))
    hi = np.full(len(u), 2.5)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        g = norm_components(spec, u[:, 0] - mid * v[:, 0], u[:, 1] - mid * v[:, 1])
        inside = g <= 1.0
        lo = np.where(inside, mid, lo)
        hi = np.where(inside, hi, mid)
    return 0.5 * (lo + hi)
