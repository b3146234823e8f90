"""Monte Carlo sampling of GUE level curvatures.

Matrices follow the density ``exp(-(N/2) Tr H^2)`` (semicircle on [-2, 2]).
For a fixed perturbation ``W`` the curvature of level m is
``C_m = sum_{n != m} |<m|W|n>|^2 / (lambda_m - lambda_n)`` and its velocity
is ``<m|W|m>``.

Trials are processed in blocks whose size depends only on N; block ``b``
draws from ``rng_stream(seed, b)``. Results are assembled in block order, so
they do not depend on how many worker threads were used.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .airy import soft_edge_density
from .bulk import semicircle_density
from .errors import (
    ConvergenceFailure,
    DegenerateSpectrum,
    DomainError,
    EmptyWindow,
    TooFewSamples,
)
from .grids import DistributionGrid
from .kernels import curvature_sums
from .numerics.rng import rng_stream

__all__ = [
    "GueSample",
    "PerturbationMatrix",
    "CurvatureRecord",
    "CurvatureBatch",
    "Campaign",
    "sample_gue",
    "eigh",
    "make_perturbation",
    "curvatures",
    "extreme_curvature",
    "window_bulk",
    "window_edge",
    "histogram",
    "ks_distance",
    "run_campaign",
    "block_size",
    "char_fn_samples",
]

GAP_GUARD = 1e-12
_W_STREAM = 1 << 40  # stream id reserved for the perturbation draw


@dataclass(frozen=True)
class GueSample:
    n_dim: int
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True)
class PerturbationMatrix:
    w: np.ndarray
    y_typ: float
    kind: str = "custom"


@dataclass(frozen=True)
class CurvatureRecord:
    lam: float
    zeta: float
    velocity: float
    curvature_raw: float
    c_bulk: float
    c_edge: float
    c_sc: float


def _normalized(lam, curv, n_dim: int, y_typ: float):
    lam = np.asarray(lam, dtype=float)
    curv = np.asarray(curv, dtype=float)
    n13 = n_dim ** (1.0 / 3.0)
    zeta = (lam - 2.0) * n_dim ** (2.0 / 3.0)
    rho = semicircle_density(lam)
    with np.errstate(divide="ignore", invalid="ignore"):
        c_bulk = np.where(rho > 0, curv / (math.pi * rho * y_typ), np.nan)
    c_edge = curv * n13 / y_typ
    return zeta, c_bulk, c_edge, c_edge - n13


@dataclass
class CurvatureBatch:
    """Column store of curvature data for many levels.

    Every normalised column is a pure function of ``lam``, ``curvature_raw``,
    ``n_dim`` and ``y_typ``.
    """

    n_dim: int
    y_typ: float
    lam: np.ndarray
    velocity: np.ndarray
    curvature_raw: np.ndarray
    trial: np.ndarray

    def __post_init__(self):
        self.zeta, self.c_bulk, self.c_edge, self.c_sc = _normalized(
            self.lam, self.curvature_raw, self.n_dim, self.y_typ
        )

    def __len__(self) -> int:
        return int(self.lam.size)

    def records(self) -> list[CurvatureRecord]:
        return [
            CurvatureRecord(float(a), float(b), float(c), float(d), float(e), float(f), float(g))
            for a, b, c, d, e, f, g in zip(self.lam, self.zeta, self.velocity, self.curvature_raw,
                                           self.c_bulk, self.c_edge, self.c_sc)
        ]

    def select(self, mask) -> "CurvatureBatch":
        return CurvatureBatch(self.n_dim, self.y_typ, self.lam[mask], self.velocity[mask],
                              self.curvature_raw[mask], self.trial[mask])


# sampling and diagonalisation ------------------------------------------------

def sample_gue(n_dim: int, rng: np.random.Generator, size: Optional[int] = None) -> np.ndarray:
    """Draw GUE matrices with weight ``exp(-(N/2) Tr H^2)``.

    Diagonal entries are N(0, 1/N); off-diagonal real and imaginary parts are
    N(0, 1/(2N)). Returns one ``(N, N)`` matrix, or ``(size, N, N)``.
    """
    if n_dim < 2:
        raise DomainError("n_dim must be >= 2")
    shape = (n_dim, n_dim) if size is None else (size, n_dim, n_dim)
    a = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    h = (a + np.conj(np.swapaxes(a, -1, -2))) * (0.5 / math.sqrt(n_dim))
    return h


def _check_invariants(h, vals, vecs, tol: float = 1e-10):
    """Boolean mask of matrices satisfying the eigensolver contract."""
    hn = np.abs(h).sum(axis=-1).max(axis=-1)  # infinity norm bounds the 2-norm
    hn = np.maximum(hn, 1e-300)
    resid = np.linalg.norm(h @ vecs - vecs * vals[..., None, :], axis=-2).max(axis=-1)
    n = vals.shape[-1]
    orth = np.abs(np.conj(np.swapaxes(vecs, -1, -2)) @ vecs - np.eye(n)).max(axis=(-2, -1))
    tr = np.abs(vals.sum(axis=-1) - np.real(np.trace(h, axis1=-2, axis2=-1)))
    return (resid <= tol * hn) & (orth <= tol) & (tr <= 1e-9 * np.maximum(1.0, hn))


def eigh(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Ascending eigenvalues and eigenvectors of a Hermitian matrix (or stack).

    LAPACK does the work; the residual, orthonormality and trace contract is
    verified afterwards and :class:`ConvergenceFailure` raised on violation.
    """
    h = np.asarray(h)
    try:
        vals, vecs = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    ok = _check_invariants(h, vals, vecs)
    if not np.all(ok):
        raise ConvergenceFailure("eigensolver contract violated")
    return vals, vecs


def diagonalize(h: np.ndarray) -> GueSample:
    vals, vecs = eigh(h)
    return GueSample(h.shape[-1], vals, vecs)


def make_perturbation(n_dim: int, kind: str = "diag_rademacher",
                      rng: Optional[np.random.Generator] = None) -> PerturbationMatrix:
    """Fixed perturbation ``W`` with ``y_typ = Tr W^2 / N``.

    ``kind`` is ``diag_rademacher`` (random +-1 diagonal), ``fixed_gue_draw``
    (one GUE matrix), ``alternating`` (diag(+1, -1, +1, ...)) or ``identity``.
    """
    if kind in ("diag_rademacher", "fixed_gue_draw") and rng is None:
        raise DomainError(f"kind {kind!r} needs a generator")
    if kind == "diag_rademacher":
        w = np.diag(rng.choice([-1.0, 1.0], size=n_dim)).astype(complex)
    elif kind == "fixed_gue_draw":
        w = sample_gue(n_dim, rng)
    elif kind == "alternating":
        w = np.diag(np.where(np.arange(n_dim) % 2 == 0, 1.0, -1.0)).astype(complex)
    elif kind == "identity":
        w = np.eye(n_dim, dtype=complex)
    else:
        raise DomainError(f"unknown perturbation kind {kind!r}")
    y = float(np.real(np.trace(w @ w))) / n_dim
    return PerturbationMatrix(w, y, kind)


def _overlaps(vecs, w):
    return np.conj(np.swapaxes(vecs, -1, -2)) @ w @ vecs


def curvatures(sample: GueSample, pert: PerturbationMatrix) -> CurvatureBatch:
    """Velocities and curvatures of every level of one sample."""
    vals = sample.eigenvalues
    if np.min(np.diff(vals)) <= GAP_GUARD:
        raise DegenerateSpectrum("level spacing below 1e-12")
    wp = _overlaps(sample.eigenvectors, pert.w)
    curv = curvature_sums(vals, np.abs(wp) ** 2)
    return CurvatureBatch(sample.n_dim, pert.y_typ, vals.copy(), np.real(np.diag(wp)).copy(),
                          np.asarray(curv), np.zeros(vals.size, dtype=np.int64))


def extreme_curvature(sample: GueSample, pert: PerturbationMatrix, which: str = "min") -> CurvatureRecord:
    """Record for the lowest level, or for the highest via ``H -> -H``.

    For ``which="max"`` the returned record is the lowest-level record of
    ``-H`` with the same ``W``, so its curvature is ``-C(lambda_max)``.
    """
    if which not in ("min", "max"):
        raise DomainError("which must be 'min' or 'max'")
    if which == "max":
        sample = GueSample(sample.n_dim, -sample.eigenvalues[::-1], sample.eigenvectors[:, ::-1])
    batch = curvatures(sample, pert)
    return batch.records()[0]


# windows, histograms, KS ---------------------------------------------------------

def window_bulk(batch: CurvatureBatch, x_center: float, half_width: float):
    """``c_bulk`` samples of levels with ``|lambda - x_center| <= half_width``."""
    if not half_width > 0:
        raise DomainError("half_width must be positive")
    mask = np.abs(batch.lam - x_center) <= half_width
    if not mask.any():
        raise EmptyWindow(f"no levels in [{x_center - half_width}, {x_center + half_width}]")
    sel = batch.select(mask)
    meta = {"frame": "bulk", "center": x_center, "half_width": half_width,
            "count": int(mask.sum()), "column": "c_bulk"}
    return sel.c_bulk, meta


def window_edge(batch: CurvatureBatch, zeta_center: float, half_width: float):
    """``c_sc`` samples of levels with ``|zeta - zeta_center| <= half_width``."""
    if not half_width > 0:
        raise DomainError("half_width must be positive")
    mask = np.abs(batch.zeta - zeta_center) <= half_width
    if not mask.any():
        raise EmptyWindow(f"no levels with zeta in [{zeta_center - half_width}, {zeta_center + half_width}]")
    sel = batch.select(mask)
    meta = {"frame": "edge", "center": zeta_center, "half_width": half_width,
            "count": int(mask.sum()), "column": "c_sc",
            "edge_density": soft_edge_density(zeta_center)}
    return sel.c_sc, meta


def histogram(samples, bins=64, range_: Optional[tuple[float, float]] = None) -> DistributionGrid:
    """Density-normalised histogram (bin centres as abscissae).

    Samples outside ``range_`` count toward the total, so the grid mass is the
    fraction inside the range.
    """
    x = np.asarray(samples, dtype=float)
    if x.size < 100:
        raise TooFewSamples(f"{x.size} samples; at least 100 needed")
    counts, edges = np.histogram(x, bins=bins, range=range_)
    width = np.diff(edges)
    dens = counts / (x.size * width)
    centres = 0.5 * (edges[1:] + edges[:-1])
    return DistributionGrid(centres, dens, {"samples": int(x.size), "bin_width": float(width[0]),
                                            "counts": counts.tolist()})


def _model_cdf(model: Callable, lo: float, hi: float, points: int = 8001):
    """CDF of a density on ``[lo, hi]`` by cumulative trapezoid.

    The mass below ``lo`` and above ``hi`` is estimated from a ``c^-4`` tail
    fitted at the ends and split between the two sides.
    """
    x = np.linspace(lo, hi, points)
    d = np.asarray(model(x), dtype=float)
    inc = 0.5 * (d[1:] + d[:-1]) * np.diff(x)
    left = d[0] * abs(lo) / 3.0 if lo < 0 else 0.0
    cdf = left + np.concatenate([[0.0], np.cumsum(inc)])
    return x, cdf


def ks_distance(samples, model: Callable, model_cdf: Optional[Callable] = None,
                support: Optional[tuple[float, float]] = None) -> float:
    """Kolmogorov-Smirnov distance between samples and a model density.

    ``model`` maps an array of abscissae to densities. If ``model_cdf`` is
    given it is used directly; otherwise the CDF comes from cumulative
    quadrature of ``model`` over ``support`` (default: the sample range
    padded by 10).
    """
    x = np.sort(np.asarray(samples, dtype=float))
    n = x.size
    if n < 100:
        raise TooFewSamples(f"{n} samples; at least 100 needed")
    if model_cdf is not None:
        f = np.asarray(model_cdf(x), dtype=float)
    else:
        lo, hi = support if support is not None else (min(x[0], 0.0) - 10.0, max(x[-1], 0.0) + 10.0)
        grid, cdf = _model_cdf(model, lo, hi)
        f = np.interp(x, grid, cdf)
    up = np.arange(1, n + 1) / n - f
    down = f - np.arange(0, n) / n
    return float(max(up.max(), down.max()))


# campaigns -------------------------------------------------------------------

def block_size(n_dim: int) -> int:
    """Trials per random stream; depends only on N."""
    return int(min(4096, max(1, (1 << 21) // (n_dim * n_dim))))


@dataclass
class Campaign:
    """Output of :func:`run_campaign`."""

    n_dim: int
    trials: int
    seed: int
    perturbation: PerturbationMatrix
    overlap: str
    levels: str
    batch: CurvatureBatch
    discarded: int = 0
    meta: dict = field(default_factory=dict)


def _run_block(b: int, n_dim: int, trials: int, seed: int, pert: PerturbationMatrix,
               overlap: str, levels: str):
    bs = block_size(n_dim)
    first = b * bs
    m = min(bs, trials - first)
    rng = rng_stream(seed, b)
    h = sample_gue(n_dim, rng, size=m)
    try:
        vals, vecs = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    ok = _check_invariants(h, vals, vecs)
    gaps = np.diff(vals, axis=-1).min(axis=-1)
    ok &= gaps > GAP_GUARD
    if overlap == "exact":
        wp = _overlaps(vecs, pert.w)
        wabs2 = np.abs(wp) ** 2
        vel = np.real(np.diagonal(wp, axis1=-2, axis2=-1))
    else:
        # independent exponential overlaps with mean y_typ/N
        e = rng.standard_exponential((m, n_dim, n_dim)) * (pert.y_typ / n_dim)
        wabs2 = np.triu(e, 1)
        wabs2 = wabs2 + np.swapaxes(wabs2, -1, -2)
        vel = rng.standard_normal((m, n_dim)) * math.sqrt(pert.y_typ / n_dim)
    curv = np.asarray(curvature_sums(np.ascontiguousarray(vals), np.ascontiguousarray(wabs2)))
    tid = (first + np.arange(m))[:, None] * np.ones((1, n_dim), dtype=np.int64)
    vals, curv, vel, tid = vals[ok], curv[ok], vel[ok], tid[ok]
    if levels == "extreme":
        # lowest level, plus the highest mapped through H -> -H
        lam = np.stack([vals[:, 0], -vals[:, -1]], axis=1)
        curv = np.stack([curv[:, 0], -curv[:, -1]], axis=1)
        vel = np.stack([vel[:, 0], -vel[:, -1]], axis=1)
        tid = tid[:, :2]
        return lam, curv, vel, tid, int(m - ok.sum())
    return vals, curv, vel, tid, int(m - ok.sum())


def run_campaign(n_dim: int, trials: int, seed: int, perturbation: str = "diag_rademacher",
                 overlap: str = "exact", levels: str = "all", threads: int = 1) -> Campaign:
    """Sample ``trials`` matrices and collect curvature data.

    Parameters
    ----------
    overlap : {"exact", "gaussian"}
        ``exact`` uses the true eigenvectors; ``gaussian`` replaces
        ``|<m|W|n>|^2`` by independent exponentials of mean ``y_typ/N``.
    levels : {"all", "extreme"}
        ``extreme`` keeps the lowest level and the mirrored highest level.
    threads : int
        Worker threads; has no effect on the output.
    """
    if n_dim < 2 or trials < 1:
        raise DomainError("need n_dim >= 2 and trials >= 1")
    if overlap not in ("exact", "gaussian") or levels not in ("all", "extreme"):
        raise DomainError("bad overlap or levels option")
    pert = make_perturbation(n_dim, perturbation, rng_stream(seed, _W_STREAM))
    nblocks = -(-trials // block_size(n_dim))
    args = (n_dim, trials, seed, pert, overlap, levels)
    if threads <= 1 or nblocks == 1:
        parts = [_run_block(b, *args) for b in range(nblocks)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda b: _run_block(b, *args), range(nblocks)))
    cat = [np.concatenate([p[i].ravel() for p in parts]) for i in range(4)]
    discarded = sum(p[4] for p in parts)
    batch = CurvatureBatch(n_dim, pert.y_typ, cat[0], cat[2], cat[1], cat[3])
    return Campaign(n_dim, trials, seed, pert, overlap, levels, batch, discarded,
                    {"block_size": block_size(n_dim), "blocks": nblocks})


def char_fn_samples(c, omega: Sequence[float], sign: int = -1):
    """Empirical ``<exp(sign i w c)>`` with its standard error per frequency."""
    c = np.asarray(c, dtype=float)
    out, se = [], []
    for w in omega:
        z = np.exp(sign * 1j * w * c)
        out.append(z.mean())
        se.append(math.sqrt((np.var(z.real) + np.var(z.imag)) / c.size))
    return np.array(out), np.array(se)
