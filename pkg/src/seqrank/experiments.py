"""Batch simulation harness producing CSV statistics.

One pass over sampled profiles serves all requested metric families:
pairwise rule distances, distances to the Kemeny ranking, per-position
displacement, and tie-round counts.  Profiles and the shared tie-break
order derive from (seed, profile index), so reruns of the same config
are bit-identical regardless of worker count; means use exact summation.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .core import Profile, Ranking, normalized_swap_distance
from .kemeny import DEFAULT_KEMENY_BOUND, kemeny_ranking_tiebroken, position_displacement
from .rules import (
    SCORE,
    SEQ_LOSER,
    SEQ_WINNER,
    Rule,
    parse_rule,
    run_score_rule,
    run_seq_loser,
    run_seq_winner,
    tie_round_count,
)
from .sampling import (
    MallowsParams,
    generator,
    random_ranking,
    sample_euclidean_rng,
    sample_impartial_culture_rng,
    sample_mallows_rng,
)

__all__ = [
    "ExperimentConfig",
    "run_pairwise_distance",
    "run_kemeny_comparison",
    "run_position_displacement",
    "run_tie_statistics",
    "run_experiment",
    "PAIRWISE_HEADER",
    "DISPLACEMENT_HEADER",
    "TIES_HEADER",
]

MODELS = ("mallows", "euclidean", "ic")
METRICS = ("pairwise", "kemeny", "displacement", "ties")

PAIRWISE_HEADER = [
    "model", "param", "m", "n", "samples", "seed",
    "rule_a", "rule_b", "mean_norm_swap", "stddev",
]
DISPLACEMENT_HEADER = [
    "model", "param", "m", "n", "samples", "seed",
    "rule_a", "rule_b", "position", "mean_displacement",
]
TIES_HEADER = [
    "model", "param", "m", "n", "samples", "seed", "rule", "mean_tie_rounds",
]

KEMENY_NAME = "kemeny"


@dataclass(frozen=True)
class ExperimentConfig:
    """Fully explicit description of one sweep.

    ``params`` is the model grid: norm-phi values for Mallows,
    dimensions for Euclidean, and ``[None]`` for impartial culture.
    ``pairs`` lists the rule pairs compared; ``rules`` the rules used for
    Kemeny comparisons and tie statistics.
    """

    model: str
    params: tuple
    m: int
    n: int
    samples: int
    seed: int
    rules: tuple[str, ...]
    pairs: tuple[tuple[str, str], ...]
    metrics: tuple[str, ...] = ("pairwise",)
    threads: int = 1

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        if self.samples < 1:
            raise ValueError("sample count must be >= 1")
        for metric in self.metrics:
            if metric not in METRICS:
                raise ValueError(f"unknown metric {metric!r}")
        if "kemeny" in self.metrics and self.m > DEFAULT_KEMENY_BOUND:
            raise ValueError(f"kemeny comparisons need m <= {DEFAULT_KEMENY_BOUND}")
        for name in self.rule_names():
            parse_rule(name)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        data = json.loads(text)
        return cls(
            model=data["model"],
            params=tuple(data.get("params") or [None]),
            m=int(data["m"]),
            n=int(data["n"]),
            samples=int(data["samples"]),
            seed=int(data["seed"]),
            rules=tuple(data.get("rules") or ()),
            pairs=tuple((a, b) for a, b in data.get("pairs") or ()),
            metrics=tuple(data.get("metrics") or ("pairwise",)),
            threads=int(data.get("threads", 1)),
        )

    def rule_names(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for name in self.rules:
            seen.setdefault(name)
        for a, b in self.pairs:
            seen.setdefault(a)
            seen.setdefault(b)
        return tuple(seen)


def _sample_profile(config: ExperimentConfig, param, index: int) -> tuple[Profile, Ranking]:
    rng = generator(config.seed, index)
    if config.model == "mallows":
        prof = sample_mallows_rng(_mallows_params(config.m, float(param)), config.n, rng)
    elif config.model == "euclidean":
        prof = sample_euclidean_rng(int(param), config.m, config.n, rng)
    else:
        prof = sample_impartial_culture_rng(config.m, config.n, rng)
    tie = random_ranking(config.m, rng)
    return prof, tie


_params_cache: dict[tuple[int, float], MallowsParams] = {}


def _mallows_params(m: int, norm_phi: float) -> MallowsParams:
    key = (m, norm_phi)
    if key not in _params_cache:
        _params_cache[key] = MallowsParams(m, norm_phi)
    return _params_cache[key]


def _run_one(rule: Rule, profile: Profile, tie: Ranking):
    if rule.family == SCORE:
        return run_score_rule(profile, rule.system, tie)
    if rule.family == SEQ_WINNER:
        return run_seq_winner(profile, rule.system, tie)
    if rule.family == SEQ_LOSER:
        return run_seq_loser(profile, rule.system, tie)
    raise ValueError(f"not a traceable rule: {rule}")


@dataclass
class _Accum:
    """Per-grid-point accumulators, reduced in sample-index order."""

    pair_values: dict = field(default_factory=dict)       # (a, b) -> [float]
    kemeny_values: dict = field(default_factory=dict)     # rule -> [float]
    disp_values: dict = field(default_factory=dict)       # (a, b, pos) -> [Fraction]
    tie_values: dict = field(default_factory=dict)        # rule -> [int]


def _one_sample(config: ExperimentConfig, param, index: int) -> dict:
    """Compute every requested statistic for one sampled profile."""
    profile, tie = _sample_profile(config, param, index)
    names = config.rule_names()
    traces = {}
    outputs = {}
    for name in names:
        rule = parse_rule(name)
        trace = _run_one(rule, profile, tie)
        traces[name] = trace
        outputs[name] = trace.output
    out: dict = {"pair": {}, "kemeny": {}, "disp": {}, "ties": {}}
    want = set(config.metrics)
    if "kemeny" in want:
        kem = kemeny_ranking_tiebroken(profile, tie)
        for name in config.rules:
            out["kemeny"][name] = float(normalized_swap_distance(kem, outputs[name]))
            if "displacement" in want:
                for pos in range(1, config.m + 1):
                    out["disp"][(KEMENY_NAME, name, pos)] = position_displacement(
                        kem, outputs[name], pos
                    )
    if "pairwise" in want or "displacement" in want:
        for a, b in config.pairs:
            if "pairwise" in want:
                out["pair"][(a, b)] = float(normalized_swap_distance(outputs[a], outputs[b]))
            if "displacement" in want:
                for pos in range(1, config.m + 1):
                    out["disp"][(a, b, pos)] = position_displacement(outputs[a], outputs[b], pos)
    if "ties" in want:
        for name in config.rules:
            out["ties"][name] = tie_round_count(traces[name])
    return out


def _collect(config: ExperimentConfig, param) -> _Accum:
    acc = _Accum()
    base = config.params.index(param) * config.samples
    indices = range(base, base + config.samples)
    if config.threads > 1:
        with ProcessPoolExecutor(max_workers=config.threads) as pool:
            chunk = max(1, config.samples // (config.threads * 8))
            results = list(
                pool.map(_one_sample, *zip(*((config, param, i) for i in indices)), chunksize=chunk)
            )
    else:
        results = [_one_sample(config, param, i) for i in indices]
    for res in results:
        for key, val in res["pair"].items():
            acc.pair_values.setdefault(key, []).append(val)
        for key, val in res["kemeny"].items():
            acc.kemeny_values.setdefault(key, []).append(val)
        for key, val in res["disp"].items():
            acc.disp_values.setdefault(key, []).append(val)
        for key, val in res["ties"].items():
            acc.tie_values.setdefault(key, []).append(val)
    return acc


def _mean(values) -> float:
    return math.fsum(values) / len(values)


def _stddev(values, mean: float) -> float:
    if len(values) < 2:
        return 0.0
    return math.sqrt(math.fsum((v - mean) ** 2 for v in values) / (len(values) - 1))


def _param_str(param) -> str:
    return "" if param is None else repr(param) if isinstance(param, float) else str(param)


def _meta(config: ExperimentConfig, param) -> list:
    return [config.model, _param_str(param), config.m, config.n, config.samples, config.seed]


def _mean_fraction(values) -> Fraction:
    return sum(values, Fraction(0)) / len(values)


def _with_metrics(config: ExperimentConfig, metrics: tuple[str, ...]) -> ExperimentConfig:
    return ExperimentConfig(
        model=config.model,
        params=config.params,
        m=config.m,
        n=config.n,
        samples=config.samples,
        seed=config.seed,
        rules=config.rules,
        pairs=config.pairs,
        metrics=metrics,
        threads=config.threads,
    )


def _family_rows(config: ExperimentConfig, param, acc: _Accum) -> dict[str, list[list]]:
    meta = _meta(config, param)
    rows: dict[str, list[list]] = {"pairwise": [], "kemeny": [], "displacement": [], "ties": []}
    for (a, b), values in acc.pair_values.items():
        mean = _mean(values)
        rows["pairwise"].append(meta + [a, b, mean, _stddev(values, mean)])
    for name, values in acc.kemeny_values.items():
        mean = _mean(values)
        rows["kemeny"].append(meta + [KEMENY_NAME, name, mean, _stddev(values, mean)])
    for (a, b, pos), values in sorted(acc.disp_values.items()):
        rows["displacement"].append(meta + [a, b, pos, float(_mean_fraction(values))])
    for name, values in acc.tie_values.items():
        rows["ties"].append(meta + [name, _mean(values)])
    return rows


def _sweep(config: ExperimentConfig) -> dict[str, list[list]]:
    """One pass over the grid; every requested family fills from the same profiles."""
    all_rows: dict[str, list[list]] = {"pairwise": [], "kemeny": [], "displacement": [], "ties": []}
    for param in config.params:
        acc = _collect(config, param)
        for family, rows in _family_rows(config, param, acc).items():
            all_rows[family].extend(rows)
    return all_rows


def run_pairwise_distance(config: ExperimentConfig) -> list[list]:
    """Rows: mean/stddev of normalized swap distance per rule pair and grid point."""
    return _sweep(_with_metrics(config, ("pairwise",)))["pairwise"]


def run_kemeny_comparison(config: ExperimentConfig) -> list[list]:
    """Rows: mean/stddev of normalized swap distance from the Kemeny ranking."""
    return _sweep(_with_metrics(config, ("kemeny",)))["kemeny"]


def run_position_displacement(config: ExperimentConfig) -> list[list]:
    """Rows: mean displacement per position for each compared pair."""
    metrics = ("displacement", "kemeny") if "kemeny" in config.metrics else ("displacement",)
    return _sweep(_with_metrics(config, metrics))["displacement"]


def run_tie_statistics(config: ExperimentConfig) -> list[list]:
    """Rows: mean number of tie rounds per rule and grid point."""
    return _sweep(_with_metrics(config, ("ties",)))["ties"]


def _write_csv(path: Path, header: list[str], rows: list[list]):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(x) if isinstance(x, float) else x for x in row])
    path.write_text(buf.getvalue())


_FAMILY_HEADERS = {
    "pairwise": PAIRWISE_HEADER,
    "kemeny": PAIRWISE_HEADER,
    "displacement": DISPLACEMENT_HEADER,
    "ties": TIES_HEADER,
}


def run_experiment(config: ExperimentConfig, outdir: str | Path) -> dict[str, Path]:
    """Run every configured metric family and write one CSV per family."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    all_rows = _sweep(config)
    written = {}
    for family in config.metrics:
        path = outdir / f"{family}.csv"
        _write_csv(path, _FAMILY_HEADERS[family], all_rows[family])
        written[family] = path
    return written
