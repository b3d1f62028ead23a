"""Monte Carlo sampling of reduced-density-matrix spectra.

States of the composite system are drawn with i.i.d. standard-normal real and
imaginary amplitudes and normalized; the ordered eigenvalues of psi psi^dagger
are accumulated into per-order-statistic histograms and sample moments, which
are then compared against the exact densities.

Reproducibility: the sample index space is split into fixed-size chunks, each
chunk's generator is seeded from (seed, chunk index), and partial results are
merged in chunk order.  Results are therefore bit-identical for a given
(dims, samples, seed, bins) regardless of the worker count.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from .ordstat import SpectrumFamily, SystemDims

__all__ = [
    "PureState",
    "EnsembleStats",
    "ComparisonEntry",
    "ComparisonReport",
    "sample_state",
    "reduced_spectrum",
    "run_ensemble",
    "compare",
    "stats_to_json_dict",
    "histogram_csv_rows",
]

CHUNK_SIZE = 25000
MOMENT_ORDERS = (1, 2, 3, 4)


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized pure state of the composite system, reshaped to m x n."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        a = self.amplitudes
        if a.ndim != 2:
            raise ValueError("amplitudes must be an m x n grid")
        norm_sq = float(np.sum(np.abs(a) ** 2))
        if abs(norm_sq - 1.0) > 1e-12:
            raise ValueError(f"state is not normalized: |psi|^2 = {norm_sq!r}")


def _draw_states(rng: np.random.Generator, m: int, n: int, count: int) -> np.ndarray:
    """(count, m, n) complex array of normalized states."""
    re = rng.standard_normal((count, m, n))
    im = rng.standard_normal((count, m, n))
    psi = re + 1j * im
    norms = np.sqrt(np.sum(np.abs(psi) ** 2, axis=(1, 2), keepdims=True))
    return psi / norms


def sample_state(dims: SystemDims, rng: np.random.Generator) -> PureState:
    """Draw one random pure state: 2mn standard normals, then normalize."""
    return PureState(_draw_states(rng, dims.m, dims.n, 1)[0])


def reduced_spectrum(state: PureState) -> np.ndarray:
    """Ascending eigenvalues of the reduced density matrix psi psi^dagger.

    Raises numpy.linalg.LinAlgError if the eigensolver fails to converge.
    """
    psi = state.amplitudes
    rho = psi @ psi.conj().T
    return np.linalg.eigvalsh(rho)


def _support_bounds(m: int, k: int) -> tuple[float, float]:
    if k == m:
        return 1.0 / m, 1.0
    return 0.0, 1.0 / (m + 1 - k)


@dataclass
class _ChunkResult:
    counts: dict[int, np.ndarray]
    moment_sums: dict[int, np.ndarray]
    sum_check_max: float
    accepted: int
    discarded: int
    outside_support: int


@dataclass
class EnsembleStats:
    """Histograms and sample moments of the ordered eigenvalues."""

    dims: SystemDims
    sample_count: int
    seed: int
    bins: int
    bin_edges: dict[int, np.ndarray]
    counts: dict[int, np.ndarray] = field(repr=False)
    sample_moments: dict[int, tuple[float, ...]]
    sum_check_max: float
    discarded: int
    outside_support: int

    @property
    def accepted(self) -> int:
        return self.sample_count - self.discarded

    def histogram_density(self, k: int) -> np.ndarray:
        """Counts normalized to a density: mass / bin width / accepted samples."""
        edges = self.bin_edges[k]
        widths = np.diff(edges)
        return self.counts[k] / (widths * max(self.accepted, 1))


def _process_chunk(
    dims: SystemDims, seed: int, chunk_index: int, count: int,
    edges: dict[int, np.ndarray],
) -> _ChunkResult:
    m, n = dims.m, dims.n
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(chunk_index,))
    rng = np.random.Generator(np.random.PCG64(ss))
    psi = _draw_states(rng, m, n, count)
    rho = psi @ psi.conj().transpose(0, 2, 1)
    discarded = 0
    try:
        ev = np.linalg.eigvalsh(rho)
    except np.linalg.LinAlgError:
        # retry one sample at a time so a single bad matrix cannot poison the chunk
        rows = []
        for r in rho:
            try:
                rows.append(np.linalg.eigvalsh(r))
            except np.linalg.LinAlgError:
                discarded += 1
        ev = np.array(rows) if rows else np.empty((0, m))
    sum_check = float(np.max(np.abs(ev.sum(axis=1) - 1.0))) if len(ev) else 0.0
    counts: dict[int, np.ndarray] = {}
    moment_sums: dict[int, np.ndarray] = {}
    outside = 0
    for k in range(1, m + 1):
        vals = ev[:, k - 1]
        hist, _ = np.histogram(vals, bins=edges[k])
        counts[k] = hist.astype(np.int64)
        outside += len(vals) - int(hist.sum())
        moment_sums[k] = np.array([np.sum(vals ** q) for q in MOMENT_ORDERS])
    return _ChunkResult(
        counts=counts,
        moment_sums=moment_sums,
        sum_check_max=sum_check,
        accepted=len(ev),
        discarded=discarded,
        outside_support=outside,
    )


def run_ensemble(
    dims: SystemDims,
    samples: int,
    seed: int = 0,
    bins: int = 100,
    threads: int = 1,
) -> EnsembleStats:
    """Accumulate ordered-eigenvalue histograms and moments over `samples` draws."""
    if samples < 1:
        raise ValueError("need at least one sample")
    if bins < 10:
        raise ValueError("need at least 10 bins")
    m = dims.m
    edges = {
        k: np.linspace(*_support_bounds(m, k), bins + 1) for k in range(1, m + 1)
    }
    chunks = [
        (i, min(CHUNK_SIZE, samples - i * CHUNK_SIZE))
        for i in range((samples + CHUNK_SIZE - 1) // CHUNK_SIZE)
    ]

    def work(chunk: tuple[int, int]) -> _ChunkResult:
        index, count = chunk
        return _process_chunk(dims, seed, index, count, edges)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, chunks))
    else:
        results = [work(c) for c in chunks]

    counts = {k: np.zeros(bins, dtype=np.int64) for k in range(1, m + 1)}
    moment_sums = {k: np.zeros(len(MOMENT_ORDERS)) for k in range(1, m + 1)}
    sum_check_max = 0.0
    discarded = 0
    outside = 0
    accepted = 0
    for res in results:  # merged in chunk order: reduction is reproducible
        for k in range(1, m + 1):
            counts[k] += res.counts[k]
            moment_sums[k] += res.moment_sums[k]
        sum_check_max = max(sum_check_max, res.sum_check_max)
        discarded += res.discarded
        outside += res.outside_support
        accepted += res.accepted
    sample_moments = {
        k: tuple(float(s) / max(accepted, 1) for s in moment_sums[k])
        for k in range(1, m + 1)
    }
    return EnsembleStats(
        dims=dims,
        sample_count=samples,
        seed=seed,
        bins=bins,
        bin_edges=edges,
        counts=counts,
        sample_moments=sample_moments,
        sum_check_max=sum_check_max,
        discarded=discarded,
        outside_support=outside,
    )


# -- comparison against exact densities ------------------------------------------------


@dataclass(frozen=True)
class ComparisonEntry:
    k: int
    q: int
    exact: float
    sample: float
    abs_diff: float
    ok: bool


@dataclass(frozen=True)
class ComparisonReport:
    """Moment-level agreement between a Monte Carlo run and the exact family."""

    dims: SystemDims
    samples: int
    seed: int
    tol: float
    entries: tuple[ComparisonEntry, ...]
    histogram_sup_dev: dict[int, float]

    @property
    def passed(self) -> bool:
        return all(e.ok for e in self.entries)

    def worst(self) -> ComparisonEntry:
        return max(self.entries, key=lambda e: e.abs_diff)


def compare(stats: EnsembleStats, fam: SpectrumFamily, tol: float) -> ComparisonReport:
    """Per (k, q <= 4) comparison of sample moments with exact moments.

    Also reports, per k, the sup deviation between the normalized histogram
    and the exact density at bin centers (informational: it scales with the
    bin width, unlike the moment checks).
    """
    if stats.dims != fam.dims:
        raise ValueError("dimension mismatch between stats and family")
    entries = []
    sup_dev: dict[int, float] = {}
    for k in range(1, stats.dims.m + 1):
        density = fam.density(k)
        for qi, q in enumerate(MOMENT_ORDERS):
            exact = float(density.moment(q))
            sample = stats.sample_moments[k][qi]
            diff = abs(exact - sample)
            entries.append(
                ComparisonEntry(k=k, q=q, exact=exact, sample=sample,
                                abs_diff=diff, ok=diff < tol)
            )
        # exact rational bin centers avoid float cancellation in the big
        # coefficient polynomials; the float edges agree to within 1e-15
        lo, hi = density.support()
        width = (hi - lo) / stats.bins
        hist_density = stats.histogram_density(k)
        sup = 0.0
        for i in range(stats.bins):
            center = lo + width * Fraction(2 * i + 1, 2)
            sup = max(sup, abs(float(hist_density[i]) - float(density.evaluate(center))))
        sup_dev[k] = sup
    return ComparisonReport(
        dims=stats.dims,
        samples=stats.sample_count,
        seed=stats.seed,
        tol=tol,
        entries=tuple(entries),
        histogram_sup_dev=sup_dev,
    )


# -- export -----------------------------------------------------------------------------


def stats_to_json_dict(stats: EnsembleStats) -> dict:
    return {
        "m": stats.dims.m,
        "n": stats.dims.n,
        "sample_count": stats.sample_count,
        "seed": stats.seed,
        "bins": stats.bins,
        "discarded": stats.discarded,
        "outside_support": stats.outside_support,
        "sum_check_max": stats.sum_check_max,
        "sample_moments": {
            str(k): list(stats.sample_moments[k]) for k in sorted(stats.sample_moments)
        },
        "histograms": {
            str(k): {
                "edges": [float(e) for e in stats.bin_edges[k]],
                "counts": [int(c) for c in stats.counts[k]],
                "density": [float(d) for d in stats.histogram_density(k)],
            }
            for k in sorted(stats.bin_edges)
        },
    }


def report_to_json_dict(report: ComparisonReport) -> dict:
    return {
        "m": report.dims.m,
        "n": report.dims.n,
        "samples": report.samples,
        "seed": report.seed,
        "tol": report.tol,
        "passed": report.passed,
        "entries": [
            {
                "k": e.k,
                "q": e.q,
                "exact": e.exact,
                "sample": e.sample,
                "abs_diff": e.abs_diff,
                "ok": e.ok,
            }
            for e in report.entries
        ],
        "histogram_sup_dev": {str(k): v for k, v in sorted(report.histogram_sup_dev.items())},
    }


def histogram_csv_rows(stats: EnsembleStats, k: int) -> Iterator[tuple[str, str, str, str]]:
    """Rows (k, bin_left, bin_right, density) for one order statistic."""
    edges = stats.bin_edges[k]
    density = stats.histogram_density(k)
    for i in range(len(density)):
        yield str(k), repr(float(edges[i])), repr(float(edges[i + 1])), repr(float(density[i]))


def dump_json(obj: dict, path) -> None:
    """Canonical JSON dump: sorted keys, fixed layout, trailing newline."""
    with open(path, "w") as fh:
        json.dump(obj, fh, sort_keys=True, indent=2)
        fh.write("\n")
