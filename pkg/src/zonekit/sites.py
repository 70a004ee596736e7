"""Sites (unions of points and segments) and exact point-to-site distances.

Distances along a segment are minimized by golden-section search in the
segment parameter: t -> |x - (a + t*(b - a))| is convex for every norm, and
golden section does not need derivatives, so the same code serves smooth and
non-smooth norms alike.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DomainError, ValidationError
from .norms import NormSpec, norm_components

__all__ = [
    "Site",
    "SiteSet",
    "dist_point_to_site",
    "site_distances",
    "min_separation",
]

_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0
# bracket shrinks by 1/phi per step; 1e-10 of the initial [0, 1] takes 48 steps
_GOLDEN_STEPS = int(np.ceil(np.log(1e-10) / np.log(_INVPHI)))


def _canon_points(pts) -> tuple:
    out = []
    for p in pts:
        x, y = float(p[0]), float(p[1])
        if not (np.isfinite(x) and np.isfinite(y)):
            raise ValidationError(f"site point must be finite, got {p!r}")
        out.append((x, y))
    return tuple(out)


@dataclass(frozen=True)
class Site:
    """One site: a finite union of points and closed segments."""

    id: int
    points: tuple = ()
    segments: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "points", _canon_points(self.points))
        segs = []
        for seg in self.segments:
            a, b = _canon_points(seg)
            if a == b:
                raise ValidationError(f"segment endpoints must be distinct, got {seg!r}")
            segs.append((a, b))
        object.__setattr__(self, "segments", tuple(segs))
        if not self.points and not self.segments:
            raise ValidationError("a site needs at least one point or segment")

    def to_dict(self) -> dict:
        return {
            "points": [list(p) for p in self.points],
            "segments": [[list(a), list(b)] for a, b in self.segments],
        }

    @classmethod
    def from_dict(cls, d: dict, id: int = 0) -> "Site":
        return cls(id=id, points=d.get("points", ()), segments=d.get("segments", ()))


@dataclass(frozen=True)
class SiteSet:
    """An ordered tuple of sites competing for territory."""

    sites: tuple

    def __post_init__(self):
        sites = tuple(self.sites)
        if not sites:
            raise ValidationError("need at least one site")
        object.__setattr__(self, "sites", sites)

    def __len__(self):
        return len(self.sites)

    def __iter__(self):
        return iter(self.sites)

    def __getitem__(self, i):
        return self.sites[i]


def site_distances(spec: NormSpec, xs, ys, site: Site) -> np.ndarray:
    """Distance from each query point (xs[k], ys[k]) to ``site`` under ``spec``.

    Vectorized over queries; the scalar entry point is
    :func:`dist_point_to_site`.
    """
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    best = np.full(xs.shape, np.inf)
    for px, py in site.points:
        np.minimum(best, norm_components(spec, xs - px, ys - py), out=best)
    for (ax, ay), (bx, by) in site.segments:
        np.minimum(best, _segment_distances(spec, xs, ys, ax, ay, bx, by), out=best)
    return best


def _segment_distances(spec, xs, ys, ax, ay, bx, by):
    """min over t in [0,1] of |(xs,ys) - (a + t(b-a))|, golden section per query."""
    dx, dy = bx - ax, by - ay

    def f(t):
        return norm_components(spec, xs - (ax + t * dx), ys - (ay + t * dy))

    lo = np.zeros(xs.shape)
    hi = np.ones(xs.shape)
    c = hi - _INVPHI * (hi - lo)
    d = lo + _INVPHI * (hi - lo)
    fc, fd = f(c), f(d)
    fbest = np.minimum(fc, fd)
    for _ in range(_GOLDEN_STEPS):
        left = fc < fd
        hi = np.where(left, d, hi)
        lo = np.where(left, lo, c)
        c = hi - _INVPHI * (hi - lo)
        d = lo + _INVPHI * (hi - lo)
        fc, fd = f(c), f(d)
        np.minimum(fbest, np.minimum(fc, fd), out=fbest)
    # endpoints are not golden-section samples; the minimum may sit there
    np.minimum(fbest, f(np.zeros(xs.shape)), out=fbest)
    np.minimum(fbest, f(np.ones(xs.shape)), out=fbest)
    return fbest


def nearest_site_point(spec: NormSpec, x, site: Site) -> tuple:
    """A point of ``site`` attaining the distance to ``x`` (exists by compactness)."""
    qx, qy = float(x[0]), float(x[1])
    best = np.inf
    best_pt = None
    for px, py in site.points:
        d = float(norm_components(spec, qx - px, qy - py))
        if d < best:
            best, best_pt = d, (px, py)
    for (ax, ay), (bx, by) in site.segments:
        t = _segment_argmin(spec, qx, qy, ax, ay, bx, by)
        px, py = ax + t * (bx - ax), ay + t * (by - ay)
        d = float(norm_components(spec, qx - px, qy - py))
        if d < best:
            best, best_pt = d, (px, py)
    return best_pt


def _segment_argmin(spec, qx, qy, ax, ay, bx, by) -> float:
    dx, dy = bx - ax, by - ay

    def f(t):
        return float(norm_components(spec, qx - (ax + t * dx), qy - (ay + t * dy)))

    lo, hi = 0.0, 1.0
    c = hi - _INVPHI * (hi - lo)
    d = lo + _INVPHI * (hi - lo)
    fc, fd = f(c), f(d)
    for _ in range(_GOLDEN_STEPS):
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - _INVPHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INVPHI * (hi - lo)
            fd = f(d)
    cands = [(f(0.0), 0.0), (fc, c), (fd, d), (f(1.0), 1.0)]
    return min(cands)[1]


def dist_point_to_site(spec: NormSpec, x, site: Site) -> float:
    """Exact distance from the point ``x`` to ``site`` under ``spec``."""
    qx, qy = float(x[0]), float(x[1])
    if not (np.isfinite(qx) and np.isfinite(qy)):
        raise DomainError(f"query point must be finite, got {x!r}")
    return float(site_distances(spec, np.array([qx]), np.array([qy]), site)[0])


def _dist_site_to_site(spec: NormSpec, s1: Site, s2: Site) -> float:
    best = np.inf
    for p in s1.points:
        best = min(best, dist_point_to_site(spec, p, s2))
    for p in s2.points:
        best = min(best, dist_point_to_site(spec, p, s1))
    # segment-segment: golden section on the outer parameter, the inner
    # minimization is itself convex so the composition stays convex
    for (ax, ay), (bx, by) in s1.segments:
        for seg2 in s2.segments:
            other = Site(id=-1, segments=(seg2,))
            dx, dy = bx - ax, by - ay

            def f(s):
                return dist_point_to_site(spec, (ax + s * dx, ay + s * dy), other)

            lo, hi = 0.0, 1.0
            c = hi - _INVPHI * (hi - lo)
            d = lo + _INVPHI * (hi - lo)
            fc, fd = f(c), f(d)
            val = min(fc, fd, f(0.0), f(1.0))
            for _ in range(_GOLDEN_STEPS):
                if fc < fd:
                    hi, d, fd = d, c, fc
                    c = hi - _INVPHI * (hi - lo)
                    fc = f(c)
                else:
                    lo, c, fc = c, d, fd
                    d = lo + _INVPHI * (hi - lo)
                    fd = f(d)
                val = min(val, fc, fd)
            best = min(best, val)
    return best


@lru_cache(maxsize=128)
def min_separation(spec: NormSpec, sites: SiteSet) -> float:
    """Minimum pairwise distance between distinct sites (the epsilon of the build).

    Raises :class:`ValidationError` when any two sites overlap (separation
    below 1e-12 of the configuration diameter): every statement this package
    checks assumes pairwise disjoint sites with positive separation.
    """
    if len(sites) < 2:
        raise DomainError("min_separation needs at least two sites")
    coords = []
    for s in sites:
        coords.extend(s.points)
        for a, b in s.segments:
            coords.extend((a, b))
    arr = np.asarray(coords)
    diameter = float(np.hypot(*(arr.max(axis=0) - arr.min(axis=0)))) or 1.0
    best = np.inf
    for i in range(len(sites)):
        for j in range(i + 1, len(sites)):
            best = min(best, _dist_site_to_site(spec, sites[i], sites[j]))
    if best < 1e-12 * diameter:
        raise ValidationError(
            f"sites overlap (separation {best:.3e} < 1e-12 * diameter {diameter:.3e})"
        )
    return float(best)
