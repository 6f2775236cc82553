"""Seeded profile samplers: normalized Mallows, Euclidean hypercube, IC.

Reproducibility: all randomness flows through numpy's counter-based
Philox bit generator, keyed by the 128-bit pair ``(seed, stream)``.
Sub-tasks (one profile in a batch, one search shard) derive their stream
from their index, so identical ``(seed, parameters)`` produce
bit-identical output on every platform, in any execution order.

The Mallows sampler draws one uniform per insertion step and feeds them
to the repeated-insertion kernel; the dispersion parameter is specified
on a normalized scale where the expected swap distance between a sample
and the central ranking is ``norm_phi * m*(m-1)/4``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .core import Profile, Ranking

__all__ = [
    "generator",
    "random_ranking",
    "MallowsParams",
    "expected_kendall",
    "phi_from_norm",
    "sample_mallows",
    "sample_mallows_rng",
    "sample_euclidean",
    "sample_euclidean_rng",
    "euclidean_profile_from_points",
    "sample_impartial_culture",
    "sample_impartial_culture_rng",
]

PHI_TOLERANCE = 1e-12


def generator(seed: int, stream: int = 0) -> np.random.Generator:
    """Philox generator keyed by (seed, stream); the only RNG in the package."""
    key = np.array([np.uint64(seed), np.uint64(stream)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def random_ranking(m: int, rng: np.random.Generator) -> Ranking:
    """A uniformly random ranking (argsort of i.i.d. uniforms)."""
    return Ranking(int(c) for c in np.argsort(rng.random(m), kind="stable"))


def expected_kendall(m: int, phi: float) -> float:
    """Expected swap distance of a Mallows sample to its central ranking.

    Computed from the repeated-insertion representation: the i-th
    insertion contributes displacement j with probability proportional
    to phi^j, so its expectation is a ratio of two finite sums (i/2 in
    the phi=1 limit).
    """
    if not 0.0 <= phi <= 1.0:
        raise ValueError(f"phi must lie in [0, 1], got {phi}")
    total = 0.0
    for i in range(1, m):
        if phi == 1.0:
            total += i / 2.0
            continue
        num = 0.0
        den = 0.0
        p = 1.0
        for j in range(i + 1):
            num += j * p
            den += p
            p *= phi
        total += num / den
    return total


def phi_from_norm(m: int, norm_phi: float) -> float:
    """Invert the normalization: phi with expected distance norm_phi*m(m-1)/4."""
    if not 0.0 <= norm_phi <= 1.0:
        raise ValueError(f"norm_phi must lie in [0, 1], got {norm_phi}")
    if m < 2:
        raise ValueError("normalization needs m >= 2")
    if norm_phi == 0.0:
        return 0.0
    if norm_phi == 1.0:
        return 1.0
    target = norm_phi * m * (m - 1) / 4.0
    lo, hi = 0.0, 1.0
    while hi - lo > PHI_TOLERANCE:
        mid = (lo + hi) / 2.0
        if expected_kendall(m, mid) < target:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


@dataclass(frozen=True)
class MallowsParams:
    """Normalized Mallows parameters; phi is derived from norm_phi."""

    m: int
    norm_phi: float
    central: Ranking = None  # type: ignore[assignment]
    phi: float = field(init=False)

    def __post_init__(self):
        if self.central is None:
            object.__setattr__(self, "central", Ranking(range(self.m)))
        if self.central.m != self.m:
            raise ValueError("central ranking does not match m")
        if self.m >= 2:
            object.__setattr__(self, "phi", phi_from_norm(self.m, self.norm_phi))
        else:
            if not 0.0 <= self.norm_phi <= 1.0:
                raise ValueError("norm_phi must lie in [0, 1]")
            object.__setattr__(self, "phi", 0.0)


def sample_mallows(params: MallowsParams, n: int, seed: int, stream: int = 0) -> Profile:
    """n i.i.d. Mallows rankings around the central ranking."""
    rng = generator(seed, stream)
    return sample_mallows_rng(params, n, rng)


def sample_mallows_rng(params: MallowsParams, n: int, rng: np.random.Generator) -> Profile:
    m = params.m
    u = rng.random((n, m - 1))
    rows = kernels.mallows_fill(u, params.phi)
    central = params.central.order
    rankings = [Ranking(central[x] for x in row) for row in rows]
    return Profile.from_rankings(rankings, m).canonicalize()


def euclidean_profile_from_points(candidates: np.ndarray, voters: np.ndarray) -> Profile:
    """Each voter ranks candidates by increasing squared distance.

    Exact ties (measure zero under sampling) break toward the lower
    candidate index via a stable sort.
    """
    candidates = np.asarray(candidates, dtype=np.float64)
    voters = np.asarray(voters, dtype=np.float64)
    diff = voters[:, None, :] - candidates[None, :, :]
    d2 = np.einsum("vcd,vcd->vc", diff, diff)
    orders = np.argsort(d2, axis=1, kind="stable")
    m = candidates.shape[0]
    rankings = [Ranking(int(c) for c in row) for row in orders]
    return Profile.from_rankings(rankings, m).canonicalize()


def sample_euclidean(dim: int, m: int, n: int, seed: int, stream: int = 0) -> Profile:
    """Uniform points in the unit hypercube for candidates, then voters."""
    if dim < 1:
        raise ValueError("dimension must be >= 1")
    rng = generator(seed, stream)
    return sample_euclidean_rng(dim, m, n, rng)


def sample_euclidean_rng(dim: int, m: int, n: int, rng: np.random.Generator) -> Profile:
    candidates = rng.random((m, dim))
    voters = rng.random((n, dim))
    return euclidean_profile_from_points(candidates, voters)


def sample_impartial_culture(m: int, n: int, seed: int, stream: int = 0) -> Profile:
    """n i.i.d. uniformly random rankings."""
    rng = generator(seed, stream)
    return sample_impartial_culture_rng(m, n, rng)


def sample_impartial_culture_rng(m: int, n: int, rng: np.random.Generator) -> Profile:
    keys = rng.random((n, m))
    orders = np.argsort(keys, axis=1, kind="stable")
    rankings = [Ranking(int(c) for c in row) for row in orders]
    return Profile.from_rankings(rankings, m).canonicalize()
