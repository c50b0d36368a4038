"""Quality indicators for front approximations (maximization, profit space)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .construct import uniform_grid

R_WEIGHT_COUNT = {2: 201, 3: 50}
UTOPIAN_SCALE = 1.01
_CHUNK = 2048


def as_front(points, p: int | None = None) -> np.ndarray:
    arr = np.asarray(points, dtype=np.float64)
    if arr.size == 0:
        return arr.reshape(0, p or (arr.shape[-1] if arr.ndim == 2 else 0))
    if arr.ndim != 2:
        raise ValueError("a front is a 2-D array of objective vectors")
    if not np.isfinite(arr).all():
        raise ValueError("front values must be finite")
    return arr


def _nonempty(*fronts):
    for f in fronts:
        if len(f) == 0:
            raise ValueError("indicator needs nonempty fronts")
    if len({f.shape[1] for f in fronts}) != 1:
        raise ValueError("fronts differ in objective count")


def hypervolume2(front, ref_point=(0.0, 0.0)) -> float:
    """Area dominated by a biobjective front and bounded below by ref_point."""
    z = as_front(front)
    if len(z) == 0:
        return 0.0
    if z.shape[1] != 2:
        raise ValueError("hypervolume is only provided for two objectives")
    ref = np.asarray(ref_point, dtype=np.float64)
    if (z < ref).any():
        raise ValueError("every front point must weakly dominate the reference point")
    z = _nondominated(z)
    z = z[np.argsort(-z[:, 0], kind="stable")]
    area = 0.0
    prev = ref[1]
    for x, y in z:
        area += (x - ref[0]) * (y - prev)
        prev = y
    return float(area)


def _nondominated(z):
    z = np.unique(z, axis=0)
    keep = [not ((z >= row).all(axis=1) & (z > row).any(axis=1)).any() for row in z]
    return z[np.array(keep, dtype=bool)]


def eps_indicator(A, B) -> float:
    """Multiplicative epsilon: smallest factor by which A must be scaled to weakly dominate B."""
    A = as_front(A)
    B = as_front(B)
    _nonempty(A, B)
    if (A <= 0).any():
        raise ValueError("epsilon indicator needs strictly positive components in A")
    worst = 0.0
    for s in range(0, len(B), _CHUNK):
        ratios = (B[s : s + _CHUNK, None, :] / A[None, :, :]).max(axis=2)
        worst = max(worst, float(ratios.min(axis=1).max()))
    return worst


def r_weights(p: int, count: int) -> np.ndarray:
    """Deterministic weight set for R: uniform grid (p = 2) or a low-discrepancy simplex set."""
    if count < 1:
        raise ValueError("weight count must be at least 1")
    if p == 2:
        return uniform_grid(count)
    d = p - 1
    # generalized golden ratio: root of x^(d+1) = x + 1
    g = 2.0
    for _ in range(64):
        g = (1.0 + g) ** (1.0 / (d + 1))
    alpha = (1.0 / g) ** np.arange(1, d + 1)
    u = np.mod(0.5 + np.outer(np.arange(1, count + 1), alpha), 1.0)
    u.sort(axis=1)
    edges = np.hstack([np.zeros((count, 1)), u, np.ones((count, 1))])
    return np.diff(edges, axis=1)


def r_measure(A, utopian, weights) -> float:
    """Mean over weights of the best weighted Tchebycheff distance to the utopian point."""
    A = as_front(A)
    _nonempty(A)
    utopian = np.asarray(utopian, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    gap = utopian[None, :] - A  # (|A|, p)
    cheb = (weights[:, None, :] * gap[None, :, :]).max(axis=2)  # (|W|, |A|)
    # correctly rounded sum: the result does not depend on point or weight order
    return math.fsum(cheb.min(axis=1)) / len(weights)


def d1_d2(A, reference):
    """Mean and max over reference points of the Euclidean distance to the nearest point of A."""
    A = as_front(A)
    R = as_front(reference)
    _nonempty(A, R)
    nearest = np.empty(len(R))
    for s in range(0, len(R), _CHUNK):
        diff = R[s : s + _CHUNK, None, :] - A[None, :, :]
        nearest[s : s + _CHUNK] = np.sqrt((diff * diff).sum(axis=2)).min(axis=1)
    return math.fsum(nearest) / len(nearest), float(nearest.max())


def proportion_nondominated(A, Z_N) -> float:
    """Share of the points of Z_N present in A (exact equality of integer vectors)."""
    Z = np.asarray(Z_N, dtype=np.int64)
    if len(Z) == 0:
        raise ValueError("Z_N must be nonempty")
    found = {tuple(row) for row in np.asarray(A, dtype=np.int64).reshape(-1, Z.shape[1])}
    hits = sum(tuple(row) in found for row in Z)
    return hits / len(Z)


@dataclass
class ReferenceData:
    reference_front: np.ndarray
    utopian_point: np.ndarray
    hv_reference_point: np.ndarray
    weight_count: int

    def __post_init__(self):
        self.reference_front = np.asarray(self.reference_front, dtype=np.int64)
        self.utopian_point = np.asarray(self.utopian_point, dtype=np.float64)
        self.hv_reference_point = np.asarray(self.hv_reference_point, dtype=np.float64)
        if len(self.reference_front) == 0:
            raise ValueError("reference front must be nonempty")
        if self.weight_count < 1:
            raise ValueError("weight_count must be at least 1")
        if (self.utopian_point < self.reference_front).any():
            raise ValueError("utopian point must weakly dominate every reference point")

    @property
    def p(self) -> int:
        return self.reference_front.shape[1]

    @classmethod
    def from_front(cls, reference_front, utopian=None, hv_reference=None, weight_count=None) -> ReferenceData:
        ref = np.asarray(reference_front, dtype=np.int64)
        p = ref.shape[1]
        if utopian is None:
            utopian = ref.max(axis=0) * UTOPIAN_SCALE
        if hv_reference is None:
            hv_reference = np.zeros(p)
        if weight_count is None:
            weight_count = R_WEIGHT_COUNT.get(p, 50)
        return cls(ref, utopian, hv_reference, int(weight_count))


@dataclass
class IndicatorReport:
    eps: float
    r_value: float
    d1: float
    d2: float
    p_yn: float
    pe_count: int
    hypervolume: float | None = None

    def to_dict(self) -> dict:
        out = {}
        if self.hypervolume is not None:
            out["hypervolume"] = self.hypervolume
        out.update(eps=self.eps, r=self.r_value, d1=self.d1, d2=self.d2, p_yn=self.p_yn, pe_count=self.pe_count)
        return out


def assemble_report(A, refdata: ReferenceData) -> IndicatorReport:
    """All indicators of A against the reference; hypervolume only for two objectives."""
    A = np.asarray(A, dtype=np.int64)
    if A.ndim != 2 or A.shape[1] != refdata.p:
        raise ValueError("front and reference differ in objective count")
    ref = refdata.reference_front
    hv = hypervolume2(A, refdata.hv_reference_point) if refdata.p == 2 else None
    d1, d2 = d1_d2(A, ref)
    return IndicatorReport(
        eps=eps_indicator(A, ref),
        r_value=r_measure(A, refdata.utopian_point, r_weights(refdata.p, refdata.weight_count)),
        d1=d1,
        d2=d2,
        p_yn=proportion_nondominated(A, ref),
        pe_count=len(A),
        hypervolume=hv,
    )
