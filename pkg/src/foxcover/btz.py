"""Developing map of the BTZ model space into Minkowski space.

Cylindrical coordinates ``(tau, r, theta)`` carry the singular flat metric
``-2 dtau dr + dr^2 + r^2 dtheta^2``; ``theta`` is real on the branched
cover and all points with ``r = 0`` and equal ``tau`` coincide. Minkowski
space uses ``(t, x, y)`` with form ``-t^2 + x^2 + y^2``. The image of the
developing map is ``J+(Delta)`` for the lightlike line
``Delta = {(s, s, 0)}``, and the deck generator ``theta -> theta + 2 pi``
acts through a parabolic isometry fixing ``Delta``.

All functions accept a single point or an array of points with last axis 3.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

ETA = np.diag([-1.0, 1.0, 1.0])
TWO_PI = 2.0 * np.pi

EXACT_TOL = 1e-12
ROUNDTRIP_TOL = 1e-9
FD_TOL = 1e-7


class BTZError(ValueError):
    pass


class NegativeR(BTZError):
    pass


class NotInImage(BTZError):
    pass


class SingularPoint(BTZError):
    pass


class VertexOffDelta(BTZError):
    pass


class CylPoint(NamedTuple):
    tau: float
    r: float
    theta: float


class MinkowskiPoint(NamedTuple):
    t: float
    x: float
    y: float


def minkowski_form(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return -v[..., 0] ** 2 + v[..., 1] ** 2 + v[..., 2] ** 2


def dev_map(p):
    """(tau, r, theta) -> (tau + r theta^2/2, tau + r theta^2/2 - r, -r theta)."""
    a = np.asarray(p, dtype=float)
    tau, r, theta = a[..., 0], a[..., 1], a[..., 2]
    if np.any(r < 0):
        raise NegativeR("r must be non-negative")
    t = tau + 0.5 * r * theta**2
    out = np.stack([t, t - r, -r * theta], axis=-1)
    return MinkowskiPoint(*out) if out.ndim == 1 else out


def in_image(m) -> np.ndarray | bool:
    """Membership in ``J+(Delta)``: the open half-space ``t > x`` plus the line itself."""
    a = np.asarray(m, dtype=float)
    u = a[..., 0] - a[..., 1]
    res = (u > 0) | ((u == 0) & (a[..., 2] == 0))
    return bool(res) if np.ndim(res) == 0 else res


def dev_map_inverse(m):
    """Inverse on ``J+(Delta)``; theta is reported as 0 on the singular axis.

    Images of points with ``r`` below the rounding unit of ``t`` are not
    distinguishable from Delta and may be rejected.
    """
    a = np.asarray(m, dtype=float)
    if not np.all(in_image(a)):
        raise NotInImage("point is not in J+(Delta)")
    t, y = a[..., 0], a[..., 2]
    r = t - a[..., 1]
    regular = r > 0
    safe_r = np.where(regular, r, 1.0)
    theta = np.where(regular, -y / safe_r, 0.0)
    tau = np.where(regular, t - y**2 / (2.0 * safe_r), t)
    out = np.stack([tau, r, theta], axis=-1)
    return CylPoint(*out) if out.ndim == 1 else out


def same_point(p, q, tol: float = 0.0) -> np.ndarray | bool:
    """Equality on the branched cover: theta is ignored on the singular axis."""
    p, q = np.asarray(p, dtype=float), np.asarray(q, dtype=float)
    scale = np.maximum(1.0, np.maximum(np.abs(p).max(axis=-1), np.abs(q).max(axis=-1)))
    close = lambda i: np.abs(p[..., i] - q[..., i]) <= tol * scale
    singular = (p[..., 1] == 0) & (q[..., 1] == 0)
    res = close(0) & close(1) & (singular | close(2))
    return bool(res) if np.ndim(res) == 0 else res


@dataclass(frozen=True)
class Isometry:
    linear: np.ndarray
    translation: np.ndarray

    def __call__(self, m):
        a = np.asarray(m, dtype=float)
        out = a @ self.linear.T + self.translation
        return MinkowskiPoint(*out) if out.ndim == 1 else out

    def __pow__(self, k: int) -> "Isometry":
        if np.any(self.translation):
            raise NotImplementedError("powers of affine isometries with translation part")
        return Isometry(np.linalg.matrix_power(self.linear, k), np.zeros(3))

    def form_defect(self) -> float:
        """max |A^T eta A - eta|."""
        return float(np.abs(self.linear.T @ ETA @ self.linear - ETA).max())

    def is_isometry(self, tol: float = EXACT_TOL) -> bool:
        return self.form_defect() <= tol


def holonomy(k: int = 1) -> Isometry:
    """Isometry ``phi^k`` with ``dev_map(tau, r, theta + 2 pi k) = phi^k(dev_map(tau, r, theta))``.

    With ``s = 2 pi k`` and ``u = t - x`` (which equals r on the image):
    ``t' = t + s^2 u / 2 - s y``, ``x' = x + s^2 u / 2 - s y``, ``y' = y - s u``.
    Built in closed form so negative powers need no matrix inversion.
    """
    s = TWO_PI * k
    c = 0.5 * s * s
    A = np.array(
        [
            [1.0 + c, -c, -s],
            [c, 1.0 - c, -s],
            [-s, s, 1.0],
        ]
    )
    return Isometry(A, np.zeros(3))


def holonomy_generator() -> Isometry:
    return holonomy(1)


def parabolic_defects(phi: Isometry) -> tuple[float, float, float]:
    """Max entries of ``phi - I``, ``(phi - I)^2`` and ``(phi - I)^3``."""
    N = phi.linear - np.eye(3)
    N2 = N @ N
    return float(np.abs(N).max()), float(np.abs(N2).max()), float(np.abs(N2 @ N).max())


def causal_leq(p, q, atol: float = 0.0):
    """``q - p`` is future causal (closed relation)."""
    d = np.asarray(q, dtype=float) - np.asarray(p, dtype=float)
    res = d[..., 0] + atol >= np.hypot(d[..., 1], d[..., 2])
    return bool(res) if np.ndim(res) == 0 else res


def chronological_lt(p, q):
    d = np.asarray(q, dtype=float) - np.asarray(p, dtype=float)
    res = d[..., 0] > np.hypot(d[..., 1], d[..., 2])
    return bool(res) if np.ndim(res) == 0 else res


def on_delta(m, tol: float = 0.0) -> bool:
    t, x, y = (float(v) for v in m)
    return abs(t - x) <= tol and abs(y) <= tol


def btz_open_contains(vertex, m) -> bool:
    """Membership in the BTZ-open set ``I+(v) ∪ ]v, +inf[`` for ``v`` on Delta."""
    if not on_delta(vertex):
        raise VertexOffDelta(f"{tuple(vertex)} is not on the line t = x, y = 0")
    if chronological_lt(vertex, m):
        return True
    return on_delta(m) and float(m[0]) > float(vertex[0])


def metric_matrix(r: float) -> np.ndarray:
    return np.array([[0.0, -1.0, 0.0], [-1.0, 1.0, 0.0], [0.0, 0.0, r * r]])


def jacobian_fd(p, h: float) -> np.ndarray:
    """Central-difference Jacobian of :func:`dev_map`; columns are d/dtau, d/dr, d/dtheta."""
    p = np.asarray(p, dtype=float)
    J = np.empty((3, 3))
    for j in range(3):
        e = np.zeros(3)
        e[j] = h
        J[:, j] = (np.asarray(dev_map(p + e)) - np.asarray(dev_map(p - e))) / (2.0 * h)
    return J


def metric_pullback_check(p, h: float = 1e-5) -> float:
    """max |J^T eta J - g(p)| with ``J`` from finite differences."""
    tau, r, theta = (float(v) for v in p)
    if r == 0:
        raise SingularPoint("pullback is only defined on the regular locus r > 0")
    if r < 0:
        raise NegativeR("r must be non-negative")
    if h <= 0:
        raise ValueError("step must be positive")
    if r - h < 0:
        raise ValueError("finite-difference stencil crosses the singular axis")
    J = jacobian_fd(p, h)
    return float(np.abs(J.T @ ETA @ J - metric_matrix(r)).max())


def roundtrip_errors(cyl: np.ndarray) -> np.ndarray:
    """Per-point ``max |p' - p| / max(1, |p|_inf)``, theta skipped on the axis."""
    back = dev_map_inverse(dev_map(cyl))
    diff = np.abs(back - cyl)
    diff[cyl[:, 1] == 0, 2] = 0.0
    return diff.max(axis=1) / np.maximum(1.0, np.abs(cyl).max(axis=1))


def equivariance_errors(cyl: np.ndarray, k: int = 1) -> np.ndarray:
    """Relative ``|dev(tau, r, theta + 2 pi k) - phi^k dev(tau, r, theta)|``."""
    phi_k = holonomy(k)
    lhs = dev_map(cyl + np.array([0.0, 0.0, TWO_PI * k]))
    rhs = phi_k(dev_map(cyl))
    return np.abs(lhs - rhs).max(axis=1) / np.maximum(1.0, np.abs(lhs).max(axis=1))


def injectivity_violations(cyl: np.ndarray, tol: float = EXACT_TOL) -> int:
    """Pairs of distinct sample points whose images lie within ``tol``."""
    from scipy.spatial import cKDTree

    imgs = dev_map(cyl)
    pairs = cKDTree(imgs).query_pairs(tol, output_type="ndarray")
    if len(pairs) == 0:
        return 0
    return int(np.count_nonzero(~same_point(cyl[pairs[:, 0]], cyl[pairs[:, 1]], tol=EXACT_TOL)))


def quotient_chart_violations(
    pairs: Sequence[tuple], k_range: Sequence[int], tol: float = ROUNDTRIP_TOL
) -> list[tuple[int, int]]:
    """``(pair index, k)`` where image coincidence and theta-shift relation disagree.

    For every pair ``(p, q)`` and ``k``: ``dev(p) = phi^k dev(q)`` must hold
    exactly when ``p`` is ``q`` with theta shifted by ``2 pi k``. With
    ``k = 0`` in range this includes injectivity on the sample.
    """
    P = np.asarray([p for p, _ in pairs], dtype=float).reshape(-1, 3)
    Q = np.asarray([q for _, q in pairs], dtype=float).reshape(-1, 3)
    dP = dev_map(P)
    dQ = dev_map(Q)
    bad = []
    for k in k_range:
        img = holonomy(k)(dQ)
        scale = np.maximum(1.0, np.maximum(np.abs(dP).max(axis=1), np.abs(img).max(axis=1)))
        coincide = np.abs(dP - img).max(axis=1) <= tol * scale
        related = same_point(P, Q + np.array([0.0, 0.0, TWO_PI * k]), tol=tol)
        for i in np.flatnonzero(coincide != related):
            bad.append((int(i), int(k)))
    return bad


def quotient_chart_check(pairs, k_range, tol: float = ROUNDTRIP_TOL) -> bool:
    return not quotient_chart_violations(pairs, k_range, tol)


def in_causal_family(curve: Sequence) -> bool:
    """Each step keeps theta fixed (off the axis) and satisfies ``0 <= dr <= 2 dtau``.

    Along such a step the metric norm is ``dr (dr - 2 dtau) <= 0`` and the
    time coordinate does not decrease, so the step is future causal.
    """
    c = np.asarray(curve, dtype=float).reshape(-1, 3)
    slack = EXACT_TOL * max(1.0, float(np.abs(c).max()))
    for a, b in zip(c[:-1], c[1:]):
        dtau, dr = b[0] - a[0], b[1] - a[1]
        if not -slack <= dr <= 2 * dtau + slack:
            return False
        if a[1] > 0 and b[1] > 0 and a[2] != b[2]:
            return False
    return True


def monotonicity_check(curve: Sequence, rtol: float = EXACT_TOL) -> bool:
    """Images of a coordinate-causal curve are causally ordered, pairwise.

    Raises ValueError if the curve is outside the sampled causal family.
    """
    if not in_causal_family(curve):
        raise ValueError("curve is not in the coordinate-causal family")
    imgs = dev_map(np.asarray(curve, dtype=float).reshape(-1, 3))
    scale = max(1.0, float(np.abs(imgs).max()))
    for i in range(len(imgs)):
        if not np.all(causal_leq(imgs[i], imgs[i:], atol=rtol * scale)):
            return False
    return True


def sample_cyl(rng: np.random.Generator, n: int, singular_fraction: float = 0.01) -> np.ndarray:
    """Uniform samples with tau in [-10, 10], r in [0, 10], theta in [-20, 20].

    A small fraction is put exactly on the singular axis.
    """
    pts = np.column_stack(
        [rng.uniform(-10, 10, n), rng.uniform(0, 10, n), rng.uniform(-20, 20, n)]
    )
    n_sing = int(round(singular_fraction * n))
    if n_sing:
        pts[rng.choice(n, n_sing, replace=False), 1] = 0.0
    return pts


def verify(samples: int = 100_000, seed: int = 42, pullback_points: int = 1000, h: float = 1e-3) -> dict:
    """The full numeric suite; returns a JSON-ready summary."""
    rng = np.random.default_rng(seed)
    cyl = sample_cyl(rng, samples)
    imgs = dev_map(cyl)
    phi = holonomy_generator()
    n1, n2, n3 = parabolic_defects(phi)

    reg = sample_cyl(rng, pullback_points, singular_fraction=0.0)
    reg[:, 1] = np.maximum(reg[:, 1], 10 * h)
    pullback = max(metric_pullback_check(p, h) for p in reg)

    # random points of J+(Delta): open half-space plus points on the line
    m = rng.uniform(-50, 50, (samples, 3))
    m[:, 0] = m[:, 1] + np.abs(m[:, 0]) + 1e-9
    m[: samples // 100, 0] = m[: samples // 100, 1]
    m[: samples // 100, 2] = 0.0
    image_ok = bool(np.all(in_image(imgs))) and bool(
        np.allclose(dev_map(dev_map_inverse(m)), m, rtol=ROUNDTRIP_TOL, atol=ROUNDTRIP_TOL)
    )
    return {
        "samples": samples,
        "seed": seed,
        "roundtrip_max_err": float(roundtrip_errors(cyl).max()),
        "equivariance_max_err": float(max(equivariance_errors(cyl, k).max() for k in (1, -1))),
        "null_direction_max_err": float(np.abs(imgs[:, 0] - imgs[:, 1] - cyl[:, 1]).max()),
        "pullback_max_err": float(pullback),
        "pullback_step": h,
        "injectivity_violations": injectivity_violations(cyl),
        "isometry_defect": phi.form_defect(),
        "parabolic_check": bool(n3 <= EXACT_TOL and n2 > EXACT_TOL and n1 > EXACT_TOL),
        "image_characterization": image_ok,
    }
