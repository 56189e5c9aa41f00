"""Round geometry of S^3 and its free cyclic quotients.

A quotient is described by a triple (n, k, l): the deck group is Z_n
acting by (z1, z2) -> (w^k z1, w^l z2) with w = exp(2*pi*i/n).  The
module provides exact-formula upper bounds and a seeded numerical
optimizer for lower bounds on the q-extent (the maximal average
pairwise distance among q points), plus the six-point angle budget that
turns the q = 5 bound into a fixed-point count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import InvalidInputError, InvalidParametersError, UnsupportedCaseError

__all__ = [
    "SpherePoint",
    "LensParams",
    "ExtentConfig",
    "ExtentReport",
    "CanonicalMap",
    "s3_distance",
    "deck_transform",
    "lens_distance",
    "alpha_q",
    "extent_upper_bound",
    "extent_lower_bound",
    "canonicalize_lens",
    "canonicalize_lens_with_map",
    "scan_extent",
    "scan_extent_threshold",
    "isolated_fixed_point_budget",
]

DECK_ORDER_CAP = 10**5
_UNIT_TOL = 1e-12


@dataclass(frozen=True)
class SpherePoint:
    """Point of the unit 3-sphere, stored as four real coordinates.

    The pairs (coords[0], coords[1]) and (coords[2], coords[3]) are the
    real and imaginary parts of the two complex coordinates.
    """

    coords: tuple[float, float, float, float]

    def __post_init__(self):
        c = tuple(float(x) for x in self.coords)
        if len(c) != 4:
            raise InvalidInputError("a sphere point needs exactly 4 coordinates")
        if abs(math.sqrt(sum(x * x for x in c)) - 1.0) > _UNIT_TOL:
            raise InvalidInputError("sphere point is not unit length")
        object.__setattr__(self, "coords", c)

    @staticmethod
    def from_array(arr) -> "SpherePoint":
        return SpherePoint(tuple(float(x) for x in arr))

    def as_array(self) -> np.ndarray:
        return np.array(self.coords)

    @property
    def z1(self) -> complex:
        return complex(self.coords[0], self.coords[1])

    @property
    def z2(self) -> complex:
        return complex(self.coords[2], self.coords[3])

    def to_json(self) -> list[float]:
        return list(self.coords)


@dataclass(frozen=True)
class LensParams:
    """Canonical parameters (n, k, l) of a free cyclic quotient of S^3.

    For n >= 3 the constructor insists on the canonical window
    0 < k <= l < n/2; use :func:`canonicalize_lens` first for raw
    exponents.  n = 1 is the sphere itself and n = 2 the half-turn
    quotient, both stored as k = l = 1.
    """

    n: int
    k: int
    l: int

    def __post_init__(self):
        n, k, l = int(self.n), int(self.k), int(self.l)
        if n < 1 or k < 1 or l < 1:
            raise InvalidParametersError("lens parameters must be positive")
        if math.gcd(k, n) != 1 or math.gcd(l, n) != 1:
            raise InvalidParametersError("rotation exponents must be coprime to n")
        if n <= 2:
            if (k, l) != (1, 1):
                raise InvalidParametersError(f"n = {n} requires k = l = 1")
        elif not (0 < k <= l and 2 * l < n):
            raise InvalidParametersError(
                f"(n,k,l)=({n},{k},{l}) is not canonical: need 0 < k <= l < n/2"
            )
        if n > DECK_ORDER_CAP:
            raise InvalidParametersError(f"deck order capped at {DECK_ORDER_CAP}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "l", l)

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "l": self.l}


@dataclass(frozen=True)
class ExtentConfig:
    """Budget knobs for the extent optimizer; all runs are seeded."""

    q: int
    restarts: int = 32
    max_iters: int = 200
    seed: int = 0
    step_tolerance: float = 1e-5

    def __post_init__(self):
        if self.q < 2:
            raise InvalidParametersError("tuple size q must be at least 2")
        if self.restarts < 1 or self.max_iters < 1:
            raise InvalidParametersError("budget fields must be positive")
        if not 0 <= self.seed < 2**64:
            raise InvalidParametersError("seed must fit in 64 unsigned bits")
        if not 0 < self.step_tolerance < 1e-2:
            raise InvalidParametersError("step_tolerance must lie in (0, 1e-2)")


@dataclass(frozen=True)
class ExtentReport:
    params: LensParams
    q: int
    upper_bound: float
    lower_bound: float
    best_config: tuple[SpherePoint, ...]
    iterations_used: int

    def __post_init__(self):
        if self.lower_bound > self.upper_bound + 1e-9:
            raise InvalidInputError("lower bound exceeds upper bound")
        if not 0.0 <= self.lower_bound <= math.pi:
            raise InvalidInputError("lower bound outside [0, pi]")
        if len(self.best_config) != self.q:
            raise InvalidInputError("best_config must hold q points")

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "q": self.q,
            "upper_bound": self.upper_bound,
            "lower_bound": self.lower_bound,
            "best_config": [p.to_json() for p in self.best_config],
            "iterations_used": self.iterations_used,
        }


@dataclass(frozen=True)
class CanonicalMap:
    """Sphere isometry carrying one lens presentation to its canonical one.

    Applied in order: conjugate z1, conjugate z2, swap the two complex
    coordinates.  Each flag records whether the move was used.
    """

    conjugate_z1: bool
    conjugate_z2: bool
    swap: bool

    def apply(self, p: SpherePoint) -> SpherePoint:
        x0, x1, x2, x3 = p.coords
        if self.conjugate_z1:
            x1 = -x1
        if self.conjugate_z2:
            x3 = -x3
        if self.swap:
            x0, x1, x2, x3 = x2, x3, x0, x1
        return SpherePoint((x0, x1, x2, x3))


def s3_distance(p: SpherePoint, q: SpherePoint) -> float:
    """Geodesic distance on the round unit 3-sphere."""
    dot = sum(a * b for a, b in zip(p.coords, q.coords))
    return math.acos(max(-1.0, min(1.0, dot)))


def deck_transform(params: LensParams, j: int, p: SpherePoint) -> SpherePoint:
    """Apply the j-th deck rotation to a point of S^3."""
    if not 0 <= j < params.n:
        raise InvalidInputError(f"deck index {j} outside [0, {params.n})")
    a1 = 2.0 * math.pi * j * params.k / params.n
    a2 = 2.0 * math.pi * j * params.l / params.n
    z1 = p.z1 * complex(math.cos(a1), math.sin(a1))
    z2 = p.z2 * complex(math.cos(a2), math.sin(a2))
    return SpherePoint((z1.real, z1.imag, z2.real, z2.imag))


@lru_cache(maxsize=64)
def _deck_phases(n: int, k: int, l: int) -> tuple[np.ndarray, np.ndarray]:
    js = np.arange(n)
    return (
        np.exp(2j * np.pi * k * js / n),
        np.exp(2j * np.pi * l * js / n),
    )


def _orbit_dots(params: LensParams, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Max over the deck orbit of <a, g_j b>, vectorized over leading axes.

    a, b: real arrays (..., 4) holding sphere points.
    """
    w1, w2 = _deck_phases(params.n, params.k, params.l)
    az1 = a[..., 0] + 1j * a[..., 1]
    az2 = a[..., 2] + 1j * a[..., 3]
    bz1 = b[..., 0] + 1j * b[..., 1]
    bz2 = b[..., 2] + 1j * b[..., 3]
    # <a, g_j b> = Re(conj(az1) bz1 w1^j) + Re(conj(az2) bz2 w2^j)
    pair1 = np.conj(az1) * bz1
    pair2 = np.conj(az2) * bz2
    dots = (pair1[..., None] * w1 + pair2[..., None] * w2).real
    return dots.max(axis=-1)


def lens_distance(params: LensParams, p: SpherePoint, q: SpherePoint) -> float:
    """Quotient distance: min over the deck orbit of q of the S^3 distance."""
    best = _orbit_dots(params, p.as_array(), q.as_array())
    return math.acos(max(-1.0, min(1.0, float(best))))


def alpha_q(q: int) -> float:
    """Reference comparison angle pi / (2 (2 - 1/floor((q+1)/2)))."""
    if q < 2:
        raise InvalidInputError("tuple size q must be at least 2")
    half = (q + 1) // 2
    return math.pi / (2.0 * (2.0 - 1.0 / half))


def extent_upper_bound(params: LensParams, q: int) -> float:
    """Closed-form upper bound for the q-extent of the quotient.

    The value depends only on (n, q); the full parameter triple is taken
    for interface uniformity.  Only the canonical range n >= 3 is
    covered by the derivation, so smaller n is refused.
    """
    if params.n < 3:
        raise UnsupportedCaseError("closed-form bound requires deck order >= 3")
    if q < 2:
        raise InvalidInputError("tuple size q must be at least 2")
    n = params.n
    a = alpha_q(q)
    c_small = math.cos(math.pi / math.sqrt(n))
    c_big = math.cos(math.pi / n)
    s_term = math.sqrt(n) * math.sin(math.pi / n) - math.sin(math.pi / math.sqrt(n))
    inner = math.cos(a) * c_small - 0.5 * math.sqrt(
        (c_small - c_big) ** 2 + (math.sin(a) * s_term) ** 2
    )
    return math.acos(max(-1.0, min(1.0, inner)))


def canonicalize_lens(n: int, k: int, l: int) -> LensParams:
    """Reduce raw exponents to the canonical window 0 < k <= l < n/2."""
    return canonicalize_lens_with_map(n, k, l)[0]


def canonicalize_lens_with_map(n: int, k: int, l: int) -> tuple[LensParams, CanonicalMap]:
    """Canonicalize and also return the sphere isometry realizing it.

    Moves used, mirroring the allowed lens-space isometries: negating an
    exponent mod n conjugates the matching complex coordinate, and
    swapping the exponents swaps the coordinates.
    """
    n = int(n)
    if n < 1:
        raise InvalidParametersError("deck order must be positive")
    k = int(k) % n if n > 1 else 1
    l = int(l) % n if n > 1 else 1
    if math.gcd(k, n) != 1 or math.gcd(l, n) != 1:
        raise InvalidInputError("rotation exponents must be coprime to n")
    if n <= 2:
        return LensParams(n, 1, 1), CanonicalMap(False, False, False)
    conj1 = 2 * k > n
    if conj1:
        k = n - k
    conj2 = 2 * l > n
    if conj2:
        l = n - l
    swap = k > l
    if swap:
        k, l = l, k
    return LensParams(n, k, l), CanonicalMap(conj1, conj2, swap)


def _canonical_exponents(n: int) -> list[int]:
    return [k for k in range(1, (n - 1) // 2 + 1) if math.gcd(k, n) == 1]


@dataclass(frozen=True)
class ScanEntry:
    n: int
    k: int
    l: int
    q: int
    upper_bound: float
    threshold: float

    @property
    def passes(self) -> bool:
        return self.upper_bound < self.threshold


def scan_extent(n_min: int, n_max: int, q: int, threshold: float) -> list[ScanEntry]:
    """Evaluate the closed-form bound on every canonical quotient in range."""
    if n_min < 3:
        raise InvalidInputError("scan starts at deck order 3")
    if n_max < n_min:
        raise InvalidInputError("empty scan range")
    rows = []
    for n in range(n_min, n_max + 1):
        exps = _canonical_exponents(n)
        for i, k in enumerate(exps):
            for l in exps[i:]:
                value = extent_upper_bound(LensParams(n, k, l), q)
                rows.append(ScanEntry(n, k, l, q, value, threshold))
    return rows


def scan_extent_threshold(n_min: int, n_max: int, q: int, threshold: float) -> list[ScanEntry]:
    """Entries of :func:`scan_extent` at or above the threshold.

    An empty return certifies the bound on the whole range.
    """
    return [row for row in scan_extent(n_min, n_max, q, threshold) if not row.passes]


def isolated_fixed_point_budget(extent_bound: float) -> dict:
    """Angle budget of six isolated fixed points versus twenty triangles.

    Six points span 20 triangles whose total angle sum exceeds 20*pi in
    positive curvature, while each of the 60 angles is at most the
    5-extent bound.  The configuration is contradictory, certifying at
    most five such points, exactly when 60 * bound <= 20*pi.
    """
    if not 0.0 < extent_bound < math.pi:
        raise InvalidInputError("extent bound must lie in (0, pi)")
    budget = 6.0 * 10.0 * extent_bound
    return {
        "six_point_budget": budget,
        "contradiction": budget <= 20.0 * math.pi * (1.0 + 1e-12),
    }


def _pairwise_mean(params: LensParams, pts: np.ndarray) -> float:
    q = pts.shape[0]
    iu, ju = np.triu_indices(q, k=1)
    dots = _orbit_dots(params, pts[iu], pts[ju])
    return float(np.arccos(np.clip(dots, -1.0, 1.0)).mean())


def _point_to_rest(params: LensParams, cand: np.ndarray, rest: np.ndarray) -> np.ndarray:
    """Sum of distances from each candidate (c, 4) to every rest point."""
    dots = _orbit_dots(params, cand[:, None, :], rest[None, :, :])
    return np.arccos(np.clip(dots, -1.0, 1.0)).sum(axis=1)


_DIRECTIONS_PER_STEP = 8
_IMPROVEMENT_EPS = 1e-12
_INITIAL_STEP = 0.5


def extent_lower_bound(params: LensParams, cfg: ExtentConfig) -> ExtentReport:
    """Seeded multi-start ascent on the mean pairwise quotient distance.

    Each restart draws a fresh q-tuple, then repeatedly sweeps the
    points; a sweep proposes 8 random tangent directions per point at
    the current step size and keeps the best strict improvement.  The
    step halves after a sweep with no improvement and the restart stops
    once it drops below cfg.step_tolerance.  Reported value is the best
    mean over all restarts; it is a certified lower bound because the
    achieving configuration is returned with it.
    """
    q = cfg.q
    pair_norm = q * (q - 1) / 2.0
    best_val = -1.0
    best_pts = None
    sweeps_total = 0
    for restart in range(cfg.restarts):
        rng = np.random.default_rng([cfg.seed, restart])
        pts = rng.standard_normal((q, 4))
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
        # track the total over unordered pairs; mean = total / C(q,2)
        total = _pairwise_mean(params, pts) * pair_norm
        step = _INITIAL_STEP
        for _ in range(cfg.max_iters):
            if step < cfg.step_tolerance:
                break
            sweeps_total += 1
            improved = False
            for i in range(q):
                rest = np.delete(pts, i, axis=0)
                base = _point_to_rest(params, pts[i : i + 1], rest)[0]
                dirs = rng.standard_normal((_DIRECTIONS_PER_STEP, 4))
                dirs -= np.outer(dirs @ pts[i], pts[i])
                norms = np.linalg.norm(dirs, axis=1, keepdims=True)
                dirs /= np.where(norms < 1e-12, 1.0, norms)
                cand = math.cos(step) * pts[i] + math.sin(step) * dirs
                cand /= np.linalg.norm(cand, axis=1, keepdims=True)
                vals = _point_to_rest(params, cand, rest)
                j = int(np.argmax(vals))
                if vals[j] > base + _IMPROVEMENT_EPS:
                    pts[i] = cand[j]
                    total += vals[j] - base
                    improved = True
            if not improved:
                step *= 0.5
        # re-evaluate exactly; the incremental total accumulates drift
        val = _pairwise_mean(params, pts)
        if val > best_val:
            best_val = val
            best_pts = pts.copy()
    if params.n >= 3:
        upper = extent_upper_bound(params, q)
    else:
        upper = math.pi  # diameter bound; the closed form needs n >= 3
    config = tuple(SpherePoint.from_array(row) for row in best_pts)
    return ExtentReport(
        params=params,
        q=q,
        upper_bound=upper,
        lower_bound=min(best_val, math.pi),
        best_config=config,
        iterations_used=sweeps_total,
    )
