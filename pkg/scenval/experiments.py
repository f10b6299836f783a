"""Monte-Carlo studies of both statistics under the two-independent-samples protocol.

Each repetition draws an empirical and a generated set from independent seed paths, evaluates the requested
statistic(s) and the values are aggregated with compensated sums, so a run gives the same numbers whatever the
number of worker threads.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Dict, Iterable, List, Optional

import numpy as np
from qcelemental.util.serialization import msgpackext_dumps, msgpackext_loads

from .core import Label, check_k, check_rho
from .exceptions import InputError
from .measures import Boundary, ExpectationMode, as_enum, memorizing_ratio, nnc
from .sampling import Density, DensityKind, Role, SeedPath, experiment_id, random_root, sample
from .theory import TABLE1_RHOS, indicator_variance_limit, mr_limit
from . import log_name

logger = logging.getLogger(f"{log_name}{__name__}")

STATISTICS = ("MR", "NNC", "BOTH")
TABLE1_MS = (500, 5000)
NNC_CONVERGENCE_MS = (100, 1000, 5000)


@dataclass(frozen=True)
class ExperimentSpec:
    """Declarative description of one Monte-Carlo run

    ``generated_density`` draws the generated sets from a different law (separation studies); by default both sets
    come from ``density``.
    """

    density: str = "NORMAL"
    d: int = 2
    m: int = 500
    rho: float = 0.5
    k: int = 3
    reps: int = 100
    seed: Optional[int] = None
    statistic: str = "MR"
    mode: str = "EXACT"
    boundary: str = "OPEN"
    tag: str = ""
    generated_density: Optional[str] = None
    method: str = "AUTO"

    def __post_init__(self):
        object.__setattr__(self, "density", Density(self.density).name)
        if self.generated_density is not None:
            object.__setattr__(self, "generated_density", Density(self.generated_density).name)
        object.__setattr__(self, "statistic", str(self.statistic).upper())
        object.__setattr__(self, "mode", as_enum(ExpectationMode, self.mode).value)
        object.__setattr__(self, "boundary", as_enum(Boundary, self.boundary).value)

        if self.statistic not in STATISTICS:
            raise InputError(f"statistic must be one of {STATISTICS}, got {self.statistic}")
        if int(self.reps) != self.reps or self.reps < 1:
            raise InputError(f"Number of repetitions must be at least 1, got {self.reps}")
        if int(self.d) != self.d or self.d < 1:
            raise InputError(f"d must be a positive integer, got {self.d}")
        if int(self.m) != self.m or self.m < 2:
            raise InputError(f"m must be at least 2, got {self.m}")
        check_rho(self.rho)
        check_k(self.k, 2 * self.m)

    @property
    def experiment(self) -> int:
        tag = self.tag or (
            f"{self.density}/{self.generated_density or self.density}/d={self.d}/m={self.m}/rho={self.rho}/k={self.k}"
        )
        return experiment_id(tag)

    def with_seed(self) -> "ExperimentSpec":
        """Copy with a concrete root seed (a fresh random one when none was given)"""
        if self.seed is not None:
            return self
        seed = random_root()
        logger.info(f"No seed given, using root seed {seed}")
        return replace(self, seed=seed)

    def to_dict(self):
        return asdict(self)


@dataclass
class ExperimentResult:
    statistic: str
    values: np.ndarray = field(repr=False)
    mean: float
    std: float
    stderr: float
    reference: float
    spec: ExperimentSpec

    @property
    def reps(self) -> int:
        return len(self.values)

    @property
    def indicator_variance(self) -> Optional[float]:
        """Limiting variance rho^d / (rho^d + 1)^2 of one memorization indicator; None for nnc results"""
        if self.statistic != "MR":
            return None
        return indicator_variance_limit(self.spec.rho, self.spec.d)

    def to_dict(self):
        return {
            "statistic": self.statistic,
            "values": np.asarray(self.values),
            "mean": self.mean,
            "std": self.std,
            "stderr": self.stderr,
            "reference": self.reference,
            "reps": self.reps,
            "indicator_variance": self.indicator_variance,
            "spec": self.spec.to_dict(),
        }

    @staticmethod
    def from_dict(d):
        return ExperimentResult(
            statistic=d["statistic"],
            values=np.asarray(d["values"], dtype=float),
            mean=d["mean"],
            std=d["std"],
            stderr=d["stderr"],
            reference=d["reference"],
            spec=ExperimentSpec(**d["spec"]),
        )

    def to_msgpack(self) -> bytes:
        return msgpackext_dumps(self.to_dict())

    @staticmethod
    def from_msgpack(data: bytes) -> "ExperimentResult":
        return ExperimentResult.from_dict(msgpackext_loads(data))


def summarize(values):
    """mean, sample standard deviation and standard error; the latter two are infinite for a single value"""
    values = [float(v) for v in values]
    n = len(values)
    mean = math.fsum(values) / n
    if n < 2:
        return mean, math.inf, math.inf
    std = math.sqrt(math.fsum((v - mean) ** 2 for v in values) / (n - 1))
    return mean, std, std / math.sqrt(n)


def map_repetitions(function, reps, threads):
    if threads <= 1:
        return [function(r) for r in range(reps)]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(function, range(reps)))


def _one_repetition(spec: ExperimentSpec, r: int) -> Dict[str, float]:
    path = SeedPath(spec.seed, spec.experiment, r, Role.EMPIRICAL)
    e = sample(spec.density, spec.d, spec.m, path, Label.EMPIRICAL)
    g = sample(spec.generated_density or spec.density, spec.d, spec.m, path.child(role=Role.GENERATED),
               Label.GENERATED)

    values = {}
    if spec.statistic in ("MR", "BOTH"):
        values["MR"] = memorizing_ratio(e, g, spec.rho, spec.boundary, method=spec.method).mr
    if spec.statistic in ("NNC", "BOTH"):
        values["NNC"] = nnc(e, g, spec.k, spec.mode, method=spec.method).nnc
    logger.debug(f"rep {r}: {values}")
    return values


def _result(statistic, values, spec) -> ExperimentResult:
    mean, std, stderr = summarize(values)
    reference = mr_limit(spec.rho, spec.d) if statistic == "MR" else 0.0
    return ExperimentResult(statistic, np.asarray(values, dtype=float), mean, std, stderr, reference, spec)


def run_experiment(spec: ExperimentSpec, threads: int = 1) -> Dict[str, ExperimentResult]:
    """Run ``spec.reps`` repetitions; for statistic BOTH both values come from the same samples

    Returns
    -------
    dict
        ``{"MR": ExperimentResult, "NNC": ExperimentResult}`` restricted to the requested statistic(s)

    """
    spec = spec.with_seed()
    logger.info(
        f"Experiment {spec.statistic}: {spec.density} vs {spec.generated_density or spec.density}, d={spec.d}, "
        f"m={spec.m}, rho={spec.rho}, k={spec.k}, reps={spec.reps}, seed={spec.seed}"
    )
    rows = map_repetitions(lambda r: _one_repetition(spec, r), spec.reps, threads)

    results = {}
    for statistic in ("MR", "NNC"):
        if statistic in rows[0]:
            results[statistic] = _result(statistic, [row[statistic] for row in rows], spec)
            logger.info(
                f"{statistic}: mean {results[statistic].mean:.6f} +/- {results[statistic].stderr:.6f} "
                f"(reference {results[statistic].reference:.6f})"
            )
    return results


def run_mr_convergence(spec: ExperimentSpec, threads: int = 1) -> ExperimentResult:
    """Memorizing ratio of two independent samples of ``spec.density``, repeated ``spec.reps`` times"""
    if spec.statistic != "MR":
        raise InputError(f"run_mr_convergence needs statistic MR, got {spec.statistic}")
    return run_experiment(spec, threads)["MR"]


def run_nnc_null(spec: ExperimentSpec, threads: int = 1) -> ExperimentResult:
    """Nearest neighbour coincidence of two independent samples, repeated ``spec.reps`` times"""
    if spec.statistic != "NNC":
        raise InputError(f"run_nnc_null needs statistic NNC, got {spec.statistic}")
    return run_experiment(spec, threads)["NNC"]


def run_table1(
    reps: int = 100,
    seed: Optional[int] = None,
    ms: Iterable[int] = TABLE1_MS,
    rhos: Iterable[float] = TABLE1_RHOS,
    densities: Iterable = tuple(DensityKind),
    d: int = 2,
    boundary: str = "OPEN",
    threads: int = 1,
) -> List[ExperimentResult]:
    """Mean memorizing ratio over the density x rho x m grid, ordered by density, then rho, then m"""
    if seed is None:
        seed = random_root()
        logger.info(f"No seed given, using root seed {seed}")

    results = []
    for density in densities:
        name = Density(density).name
        for rho in rhos:
            for m in ms:
                spec = ExperimentSpec(
                    density=name, d=d, m=m, rho=rho, reps=reps, seed=seed, statistic="MR", boundary=boundary,
                    tag=f"table1/{name}/d={d}/rho={rho}/m={m}",
                )
                results.append(run_mr_convergence(spec, threads))
    return results


def run_nnc_convergence(
    density="NORMAL",
    d: int = 2,
    k: int = 3,
    ms: Iterable[int] = NNC_CONVERGENCE_MS,
    reps: int = 100,
    seed: Optional[int] = None,
    mode: str = "EXACT",
    generated_density=None,
    threads: int = 1,
) -> List[ExperimentResult]:
    """Mean nnc under the two-sample protocol for each sample size in ``ms``"""
    if seed is None:
        seed = random_root()
        logger.info(f"No seed given, using root seed {seed}")

    results = []
    for m in ms:
        spec = ExperimentSpec(
            density=density, d=d, m=m, k=k, reps=reps, seed=seed, statistic="NNC", mode=mode,
            generated_density=generated_density,
        )
        results.append(run_nnc_null(spec, threads))
    return results
