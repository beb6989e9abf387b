"""Output states, the three-photon coincidence amplitude and the HOM contour.

The HOM contour is the set of ``(G, theta)`` where the coincidence amplitude
``c111`` (one photon in, one photon out of every port) vanishes.  It is
available two ways: :func:`contour_analytic` evaluates the closed-form
``theta(G)`` and :func:`contour_numeric` searches ``|c111|**2`` directly.
"""

from __future__ import annotations

import csv
import io
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .coupler import DeviceParams, closed_form, transfer_matrix
from .fock import Occupation, OutputState, enumerate_basis
from .permanent import amplitude, permanent_ryser

ONES = (1, 1, 1)

MAX_EVOLVE_PHOTONS = 12
MAX_ORACLE_PHOTONS = 6

CONTOUR_TOL = 1e-9  # on |c111|
ACCEPT_F = 1e-18  # on |c111|**2
SAMPLES_PER_PI = 720
THETA_XTOL = 1e-12
DEDUP_TOL = 1e-8
_FD_STEP = 1e-5
_MAX_SLOPE = 4.0  # bound on |d c111 / d theta| at zero phases


def fmt(x: float) -> str:
    """Float formatting used in every CSV: at most 15 significant digits."""
    x = float(x)
    if x == 0:
        x = 0.0  # drop the sign of negative zero
    return f"{x:.15g}"


def evolve(d: DeviceParams, input: Sequence[int] = ONES) -> OutputState:
    """Output state for a Fock input, one permanent per output configuration."""
    input = Occupation(input)
    n = input.total()
    if n > MAX_EVOLVE_PHOTONS:
        raise ValueError(f"evolve supports at most {MAX_EVOLVE_PHOTONS} photons, got {n}")
    V = transfer_matrix(d)
    amps = [amplitude(V, input, out) for out in enumerate_basis(n)]
    return OutputState(input, np.array(amps))


def evolve_oracle(d: DeviceParams, input: Sequence[int] = ONES) -> OutputState:
    """Output state by expanding the product of transformed creation operators.

    Each input photon in mode ``i`` becomes ``sum_j V[i, j] a_j^dagger``; the
    product is multiplied out monomial by monomial, then ``(a^dagger)^k |0>``
    contributes ``sqrt(k!)``.  Shares nothing with the permanent path.
    """
    input = Occupation(input)
    n = input.total()
    if n > MAX_ORACLE_PHOTONS:
        raise ValueError(f"evolve_oracle supports at most {MAX_ORACLE_PHOTONS} photons, got {n}")
    V = transfer_matrix(d)

    poly: dict[tuple[int, ...], complex] = {(0, 0, 0): 1 + 0j}
    for i, count in enumerate(input):
        for _ in range(count):
            nxt: dict[tuple[int, ...], complex] = defaultdict(complex)
            for powers, coef in poly.items():
                for j in range(3):
                    raised = list(powers)
                    raised[j] += 1
                    nxt[tuple(raised)] += coef * V[i, j]
            poly = dict(nxt)

    in_norm = math.sqrt(math.prod(math.factorial(k) for k in input))
    amps = {
        powers: coef * math.sqrt(math.prod(math.factorial(k) for k in powers)) / in_norm
        for powers, coef in poly.items()
    }
    return OutputState.from_mapping(input, amps)


def c111(d: DeviceParams) -> complex:
    """Amplitude for one photon per output port given one photon per input port."""
    return complex(amplitude(transfer_matrix(d), ONES, ONES))


def c111_grid(G, theta, psi=0.0, phi=0.0) -> np.ndarray:
    """Vectorized :func:`c111` over broadcast parameter arrays."""
    return permanent_ryser(closed_form(G, theta, psi, phi))


@dataclass(frozen=True)
class ContourPoint:
    """A point with vanishing coincidence amplitude.

    ``branch`` is ``"outer=+;inner=-;n=0"``-style for points from the closed
    form and ``"numeric"`` for points found by search.
    """

    G: float
    theta: float
    c111_abs: float
    branch: str

    def __post_init__(self):
        if not self.c111_abs <= CONTOUR_TOL:
            raise ValueError(f"|c111| = {self.c111_abs:.3g} exceeds {CONTOUR_TOL:g}")


def _branch_label(outer: int, inner: int, n: int) -> str:
    sign = {1: "+", -1: "-"}
    return f"outer={sign[outer]};inner={sign[inner]};n={n}"


def contour_thetas(G: float) -> list[tuple[float, int, int, int]]:
    """Every real ``theta`` the closed-form contour expression yields at ``G``.

    Returns ``(theta, outer, inner, n)`` for each sign choice whose result is
    real; nothing is validated here.
    """
    s2 = math.sin(G / 2) ** 2
    cG = math.cos(G)
    radicand = s2 * s2 * (
        20 * cG + 3 * (8 * math.cos(2 * G) + 4 * math.cos(3 * G) + 3 * math.cos(4 * G) + 5)
    )
    denom = 3 * cG + 2
    if radicand < 0 or s2 == 0 or denom == 0:
        return []
    X = math.sqrt(2) * math.sqrt(radicand) / (s2 * s2) / denom
    if not math.isfinite(X):
        return []

    found = []
    for inner in (1, -1):
        y = 8 + inner * X
        if y < 0:
            continue
        arg = 4 / math.sqrt(y) if y > 0 else math.inf
        if abs(arg) < 1:
            continue
        base = math.acos(1 / arg)  # arcsec, principal value in [0, pi]
        for n in (0, 1):
            for outer in (1, -1):
                found.append((n * math.pi + outer * base, outer, inner, n))
    return found


def contour_analytic(G: float, tol: float = CONTOUR_TOL) -> list[ContourPoint]:
    """Closed-form contour points at ``G``, each certified by ``|c111| <= tol``.

    Candidates that come out complex or fail the certificate are dropped;
    an empty list means no contour crossing at this ``G``.  Coinciding
    candidates from different sign choices are reported once.
    """
    points: list[ContourPoint] = []
    for theta, outer, inner, n in contour_thetas(G):
        if any(abs(theta - p.theta) <= 1e-12 for p in points):
            continue
        residual = abs(c111(DeviceParams(G, theta)))
        if residual <= tol:
            points.append(ContourPoint(G, theta, residual, _branch_label(outer, inner, n)))
    return sorted(points, key=lambda p: p.theta)


def _refine(G: float, lo: float, hi: float, xtol: float) -> float:
    def f(t):
        return abs(c111(DeviceParams(G, t))) ** 2

    res = minimize_scalar(f, bounds=(lo, hi), method="bounded", options={"xatol": xtol})
    theta = float(res.x)
    # With zero phases c111 is real, so a simple zero shows up as a sign change
    # of its real part; polish with bracketed root finding when one exists.
    # The bounded minimizer alone stops at ~1e-8 relative precision.
    h = max(16 * xtol, 1e-7 * max(1.0, abs(theta)))
    a, b = max(lo, theta - h), min(hi, theta + h)
    fa, fb = c111(DeviceParams(G, a)).real, c111(DeviceParams(G, b)).real
    if fa * fb < 0:
        root = _root(G, a, b)
    else:
        # A zero that touches without crossing: c111 is then extremal there,
        # so solve for a root of the central-difference slope instead.
        def slope(t):
            return (c111(DeviceParams(G, t + _FD_STEP)).real - c111(DeviceParams(G, t - _FD_STEP)).real) / (2 * _FD_STEP)

        a, b = theta - 8 * h, theta + 8 * h
        if slope(a) * slope(b) >= 0:
            return theta
        root = brentq(slope, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    if f(root) <= f(theta):
        theta = root
    return theta


def _root(G: float, a: float, b: float) -> float:
    return brentq(lambda t: c111(DeviceParams(G, t)).real, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps)


def contour_numeric(
    G_grid: Iterable[float],
    theta_window: tuple[float, float] = (0.0, math.pi),
    samples_per_pi: int = SAMPLES_PER_PI,
    accept: float = ACCEPT_F,
    xtol: float = THETA_XTOL,
) -> list[ContourPoint]:
    """Search ``|c111|**2`` for zeros along ``theta`` at each ``G`` of the grid.

    The window is sampled densely.  Every sampled local minimum (including the
    window edges) is refined with a bounded scalar minimizer, which also
    catches zeros where ``c111`` touches zero without changing sign.  Since
    ``c111`` is real at zero phases, sign changes between samples are
    bracketed and solved as well; this separates pairs of zeros closer than
    the sample spacing, which share a single sampled minimum.  Points with
    ``|c111|**2 <= accept`` are kept.
    """
    G_grid = [float(g) for g in G_grid]
    if not G_grid:
        raise ValueError("G_grid must not be empty")
    lo, hi = (float(x) for x in theta_window)
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
        raise ValueError(f"invalid theta window {theta_window}")
    n_samples = max(samples_per_pi, int(math.ceil(samples_per_pi * (hi - lo) / math.pi))) + 1
    thetas = np.linspace(lo, hi, n_samples)
    h = thetas[1] - thetas[0]

    points: list[ContourPoint] = []
    for G in G_grid:
        c = c111_grid(G, thetas).real
        f = c * c
        candidates = [float(thetas[i]) for i in np.flatnonzero(c == 0)]
        candidates += [_root(G, thetas[i], thetas[i + 1]) for i in np.flatnonzero(c[:-1] * c[1:] < 0)]

        left = np.concatenate(([np.inf], f[:-1]))
        right = np.concatenate((f[1:], [np.inf]))
        # |d c111 / d theta| <= 4, so a zero inside the refinement bracket
        # (half-width h) forces |c111| <= 4 h at the sampled minimum.
        screen = (2 * _MAX_SLOPE * h) ** 2
        for i in np.flatnonzero((f <= left) & (f <= right) & (f <= screen)):
            a = thetas[max(i - 1, 0)]
            b = thetas[min(i + 1, n_samples - 1)]
            theta = _refine(G, a, b, xtol)
            if f[i] < abs(c111(DeviceParams(G, theta))) ** 2:
                theta = float(thetas[i])
            candidates.append(theta)

        found: list[float] = []
        for theta in candidates:
            residual = abs(c111(DeviceParams(G, theta)))
            if residual**2 <= accept and all(abs(theta - t) > DEDUP_TOL for t in found):
                found.append(theta)
                points.append(ContourPoint(G, theta, residual, "numeric"))
    return sorted(points, key=lambda p: (p.G, p.theta))


def merge_contours(*groups: Iterable[ContourPoint], tol: float = DEDUP_TOL) -> list[ContourPoint]:
    """Union of contour point lists, dropping later points within ``tol`` in theta at equal G."""
    merged: list[ContourPoint] = []
    by_G: dict[float, list[float]] = defaultdict(list)
    for group in groups:
        for p in group:
            if any(abs(p.theta - t) <= tol for t in by_G[p.G]):
                continue
            by_G[p.G].append(p.theta)
            merged.append(p)
    return sorted(merged, key=lambda p: (p.G, p.theta))


def contour_to_csv(points: Iterable[ContourPoint]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["G", "theta", "c111_abs", "branch"])
    for p in sorted(points, key=lambda p: (p.G, p.theta)):
        writer.writerow([fmt(p.G), fmt(p.theta), fmt(p.c111_abs), p.branch])
    return buf.getvalue()


@dataclass(frozen=True)
class Landscape:
    """``|c111|**2`` on a rectangular grid; ``values[i, j]`` is at ``(G[i], theta[j])``."""

    G: np.ndarray
    theta: np.ndarray
    values: np.ndarray

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["G\\theta"] + [fmt(t) for t in self.theta])
        for g, row in zip(self.G, self.values):
            writer.writerow([fmt(g)] + [fmt(v) for v in row])
        return buf.getvalue()


def coincidence_landscape(
    G_range: tuple[float, float],
    theta_range: tuple[float, float],
    resolution: tuple[int, int] | int = (201, 201),
) -> Landscape:
    """Sample the coincidence probability ``|c111|**2`` on a grid.

    G is the slow (row) axis.  Values are clipped to ``[0, 1]`` to absorb
    rounding at the identity points.
    """
    if isinstance(resolution, int):
        resolution = (resolution, resolution)
    nG, nT = resolution
    if nG < 2 or nT < 2:
        raise ValueError("resolution must be at least 2 per axis")
    G = np.linspace(*G_range, nG)
    theta = np.linspace(*theta_range, nT)
    values = np.abs(c111_grid(G[:, None], theta[None, :])) ** 2
    return Landscape(G, theta, np.clip(values, 0.0, 1.0))


def two_photon_reduction_check(d: DeviceParams, j: int, k: int) -> float:
    """``|V_jj V_kk + V_jk V_kj|`` for modes ``j``, ``k`` numbered from 1.

    This is the two-photon coincidence amplitude of the 2x2 block of the
    transfer matrix spanned by the two modes.
    """
    for mode in (j, k):
        if mode not in (1, 2, 3):
            raise ValueError(f"mode index must be 1, 2 or 3, got {mode}")
    if j == k:
        raise ValueError("j and k must differ")
    V = transfer_matrix(d)
    a, b = j - 1, k - 1
    return float(abs(V[a, a] * V[b, b] + V[a, b] * V[b, a]))
