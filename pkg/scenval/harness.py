"""Toy scenario generators and the harness that scores them against a fixed training set.

A generator that drifts from "new points from the learned law" toward "copies of the training data" should show
nnc falling while mr rises. The harness walks a schedule of generators, evaluates both statistics at every step and
records the trajectory.

Generators
----------
MEMORIZER
    every training point once per pass (a random permutation, repeated when more points are requested), plus
    Gaussian jitter of scale sigma. sigma = 0 returns exact copies.
JITTER
    resample with replacement plus Gaussian jitter of scale sigma > 0
BREAKER
    resample with replacement, then permute every coordinate column independently. Marginals are kept, dependence
    between coordinates is destroyed.
TRUE
    fresh draws from the law the training data came from
"""
import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import List, Optional

import numpy as np
from scipy import stats

from .core import Label, PointSet, make_point_set
from .exceptions import DimensionMismatch, EmptySchedule, InputError
from .experiments import map_repetitions, summarize
from .measures import Boundary, ExpectationMode, as_enum, memorizing_ratio, nnc
from .nn_engine import within_set_nn_distance
from .printTools import print_table_string
from .sampling import CorrelatedLine, Role, SeedPath, as_law, experiment_id, random_root
from . import log_name

logger = logging.getLogger(f"{log_name}{__name__}")

PRESET_SCHEDULES = ("JITTER", "MEMORIZER", "BREAKER", "TRUE")


class GeneratorKind(Enum):
    MEMORIZER = "MEMORIZER"
    JITTER_RESAMPLER = "JITTER"
    INDEPENDENCE_BREAKER = "BREAKER"
    TRUE_SAMPLER = "TRUE"


@dataclass(frozen=True)
class GeneratorSpec:
    kind: GeneratorKind
    training: PointSet
    seed_path: SeedPath
    m: Optional[int] = None
    sigma: float = 0.0
    law: object = None

    def __post_init__(self):
        object.__setattr__(self, "kind", GeneratorKind(self.kind))
        if self.m is None:
            object.__setattr__(self, "m", self.training.m)
        if self.m < 2:
            raise InputError(f"A generator must produce at least 2 points, got m={self.m}")
        if not (self.sigma >= 0.0 and math.isfinite(self.sigma)):
            raise InputError(f"Jitter scale must be finite and nonnegative, got {self.sigma}")
        if self.kind == GeneratorKind.JITTER_RESAMPLER and self.sigma <= 0.0:
            raise InputError("The jitter resampler needs sigma > 0; use the memorizer for exact copies")
        if self.kind == GeneratorKind.TRUE_SAMPLER:
            if self.law is None:
                raise InputError("The true sampler needs the law of the training data")
            law_d = getattr(self.law, "d", None)
            if law_d is not None and law_d != self.training.d:
                raise DimensionMismatch(f"Law is {law_d} dimensional, training data has d={self.training.d}")

    @property
    def tag(self) -> str:
        return self.kind.value


def generate(spec: GeneratorSpec) -> PointSet:
    """Draw ``spec.m`` generated points. Output dimension equals the training dimension."""
    training = spec.training.points
    n, d = training.shape
    m = spec.m

    if spec.kind == GeneratorKind.TRUE_SAMPLER:
        return as_law(spec.law).sample(d, m, spec.seed_path, Label.GENERATED)

    rng = spec.seed_path.generator()
    if spec.kind == GeneratorKind.MEMORIZER:
        passes = -(-m // n)
        idx = np.concatenate([rng.permutation(n) for _ in range(passes)])[:m]
        points = training[idx]
    else:
        points = training[rng.integers(0, n, size=m)]

    if spec.kind == GeneratorKind.INDEPENDENCE_BREAKER:
        points = np.column_stack([points[rng.permutation(m), j] for j in range(d)])

    if spec.sigma > 0.0:
        points = points + spec.sigma * rng.standard_normal((m, d))

    return make_point_set(points, Label.GENERATED)


@dataclass
class HarnessStep:
    step: int
    tag: str
    sigma: float
    nnc: float
    mr: float
    nnc_se: float
    mr_se: float
    reps: int

    def to_dict(self):
        return {
            "step": self.step,
            "generator": self.tag,
            "sigma": self.sigma,
            "nnc": self.nnc,
            "mr": self.mr,
            "nnc_se": self.nnc_se,
            "mr_se": self.mr_se,
            "reps": self.reps,
        }

    @staticmethod
    def from_dict(d):
        return HarnessStep(
            d["step"], d["generator"], d["sigma"], d["nnc"], d["mr"], d["nnc_se"], d["mr_se"], d["reps"]
        )

    def __str__(self):
        return (
            f"Step {self.step} {self.tag} sigma={self.sigma:.6g}: nnc={self.nnc:.6f} (+/-{self.nnc_se:.6f}), "
            f"mr={self.mr:.6f} (+/-{self.mr_se:.6f})"
        )


class Trajectory(object):
    """Ordered record of harness steps"""

    columns = ("step", "generator", "sigma", "nnc", "mr", "nnc_se", "mr_se", "reps")

    def __init__(self, k=3, rho=0.5, mode="EXACT", boundary="OPEN"):
        self.steps: List[HarnessStep] = []
        self.k = k
        self.rho = rho
        self.mode = mode
        self.boundary = boundary

    def __len__(self):
        return len(self.steps)

    def __getitem__(self, index):
        return self.steps[index]

    def append(self, step: HarnessStep):
        self.steps.append(step)

    def __str__(self):
        s = "Trajectory of length %d\n" % len(self)
        for step in self.steps:
            s += f"{step}\n"
        return s

    @property
    def nnc(self):
        return np.array([s.nnc for s in self.steps])

    @property
    def mr(self):
        return np.array([s.mr for s in self.steps])

    def rows(self):
        return [s.to_dict() for s in self.steps]

    def to_dict(self):
        return {
            "k": self.k,
            "rho": self.rho,
            "mode": self.mode,
            "boundary": self.boundary,
            "steps": self.rows(),
        }

    @staticmethod
    def from_dict(d):
        traj = Trajectory(d.get("k", 3), d.get("rho", 0.5), d.get("mode", "EXACT"), d.get("boundary", "OPEN"))
        for step in d.get("steps", []):
            traj.append(HarnessStep.from_dict(step))
        return traj

    def summary_string(self):
        header = ["Step", "Generator", "sigma", "nnc", "+/-", "mr", "+/-"]
        rows = [[s.step, s.tag, s.sigma, s.nnc, s.nnc_se, s.mr, s.mr_se] for s in self.steps]
        return print_table_string(header, rows, title="==> Harness Trajectory <==")


def run_harness(
    training: PointSet,
    schedule: List[GeneratorSpec],
    k: int = 3,
    rho: float = 0.5,
    mode=ExpectationMode.EXACT,
    reps: int = 5,
    boundary=Boundary.OPEN,
    method="AUTO",
) -> Trajectory:
    """Score every generator of ``schedule`` against ``training``

    Parameters
    ----------
    training : PointSet
        fixed empirical set, also the set the generators draw from
    schedule : list of GeneratorSpec
        one entry per step, in order
    k, rho, mode, boundary, method
        passed to :func:`nnc` and :func:`memorizing_ratio`
    reps : int
        independent draws per step; step values are their means

    Returns
    -------
    Trajectory

    """
    if not schedule:
        raise EmptySchedule("empty schedule")
    if int(reps) != reps or reps < 1:
        raise InputError(f"Repetitions per step must be at least 1, got {reps}")

    mode = as_enum(ExpectationMode, mode)
    boundary = as_enum(Boundary, boundary)
    trajectory = Trajectory(k, rho, mode.value, boundary.value)

    for i, spec in enumerate(schedule):
        if spec.training.d != training.d:
            raise DimensionMismatch(f"Step {i} generator has d={spec.training.d}, training data has d={training.d}")
        if spec.m != training.m:
            raise InputError(f"Step {i} generates {spec.m} points but the training set has {training.m}")

        nnc_values, mr_values = [], []
        for r in range(reps):
            g = generate(replace(spec, seed_path=spec.seed_path.child(repetition=r)))
            nnc_values.append(nnc(training, g, k, mode, method=method).nnc)
            mr_values.append(memorizing_ratio(training, g, rho, boundary, method=method).mr)

        nnc_mean, _, nnc_se = summarize(nnc_values)
        mr_mean, _, mr_se = summarize(mr_values)
        step = HarnessStep(i, spec.tag, float(spec.sigma), nnc_mean, mr_mean, nnc_se, mr_se, reps)
        logger.info(str(step))
        trajectory.append(step)

    return trajectory


def correlated_line_training(m: int = 500, noise: float = 0.1, seed: Optional[int] = None) -> PointSet:
    """Default training data: points on y = x plus Gaussian noise"""
    seed = random_root() if seed is None else seed
    path = SeedPath(seed, experiment_id("harness/training"), 0, Role.TRAINING)
    return CorrelatedLine(noise).sample(2, m, path, Label.EMPIRICAL)


def _step_path(seed, i):
    return SeedPath(seed, experiment_id(f"harness/step={i}"), 0, Role.GENERATOR)


def decreasing_sigma_schedule(
    training: PointSet,
    seed: int,
    steps: int = 10,
    sigma_max: float = 1.0,
    sigma_min: Optional[float] = None,
    kind=GeneratorKind.JITTER_RESAMPLER,
) -> List[GeneratorSpec]:
    """Geometric jitter scales from ``sigma_max`` down to ``sigma_min``

    ``sigma_min`` defaults to the median nearest neighbour distance of the training set, the scale at which
    jittered copies start to land on training points.
    """
    if steps < 1:
        raise EmptySchedule("empty schedule")
    if sigma_min is None:
        sigma_min = float(np.median(within_set_nn_distance(training)))
    if not 0.0 < sigma_min <= sigma_max:
        raise InputError(f"Need 0 < sigma_min <= sigma_max, got sigma_min={sigma_min}, sigma_max={sigma_max}")

    sigmas = np.geomspace(sigma_max, sigma_min, steps) if steps > 1 else np.array([sigma_max])
    return [
        GeneratorSpec(kind, training, _step_path(seed, i), sigma=float(sigma)) for i, sigma in enumerate(sigmas)
    ]


def preset_schedule(
    name: str,
    training: PointSet,
    seed: int,
    law=None,
    steps: int = 10,
    sigma_max: float = 1.0,
    sigma_min: Optional[float] = None,
) -> List[GeneratorSpec]:
    """JITTER and MEMORIZER walk decreasing jitter scales (MEMORIZER ends on exact copies); BREAKER and TRUE are
    single steps"""
    name = name.upper()
    if name not in PRESET_SCHEDULES:
        raise InputError(f"Unknown schedule {name}; expected one of {PRESET_SCHEDULES}")
    if steps < 1:
        raise EmptySchedule("empty schedule")

    if name == "JITTER":
        return decreasing_sigma_schedule(training, seed, steps, sigma_max, sigma_min)
    if name == "MEMORIZER":
        schedule = []
        if steps > 1:
            schedule = decreasing_sigma_schedule(
                training, seed, steps - 1, sigma_max, sigma_min, kind=GeneratorKind.MEMORIZER
            )
        schedule.append(GeneratorSpec(GeneratorKind.MEMORIZER, training, _step_path(seed, steps - 1), sigma=0.0))
        return schedule
    if name == "BREAKER":
        return [GeneratorSpec(GeneratorKind.INDEPENDENCE_BREAKER, training, _step_path(seed, 0))]
    return [GeneratorSpec(GeneratorKind.TRUE_SAMPLER, training, _step_path(seed, 0), law=law)]


def schedule_from_records(records, training: PointSet, seed: int, law=None) -> List[GeneratorSpec]:
    """Build a schedule from ``[{"kind": "JITTER", "sigma": 0.5}, ...]`` (e.g. a parsed json file)"""
    if not records:
        raise EmptySchedule("empty schedule")
    schedule = []
    for i, rec in enumerate(records):
        try:
            kind = GeneratorKind(str(rec["kind"]).upper())
        except (KeyError, TypeError, ValueError):
            raise InputError(f"Schedule entry {i} needs a kind among {[k.value for k in GeneratorKind]}: {rec}")
        schedule.append(
            GeneratorSpec(kind, training, _step_path(seed, i), sigma=float(rec.get("sigma", 0.0)), law=law)
        )
    return schedule


def trend_correlations(trajectory: Trajectory):
    """Spearman rank correlation of (mr, step) and of (nnc, step)"""
    if len(trajectory) < 2:
        raise InputError("Trend correlations need at least two steps")
    steps = np.arange(len(trajectory))
    mr_rho = stats.spearmanr(steps, trajectory.mr)[0]
    nnc_rho = stats.spearmanr(steps, trajectory.nnc)[0]
    return float(mr_rho), float(nnc_rho)


def opposition_violations(trajectory: Trajectory, z: float = 2.0) -> List[int]:
    """Steps i where, going to step i + 1, nnc rises and mr falls, both by more than ``z`` standard errors

    Raises
    ------
    InputError
        a step has an infinite or undefined standard error (fewer than two repetitions)

    """
    for step in trajectory.steps:
        if not (math.isfinite(step.nnc_se) and math.isfinite(step.mr_se)):
            raise InputError(
                f"Step {step.step} has no finite standard error ({step.reps} repetition(s)); the opposition check "
                f"needs at least 2 repetitions per step"
            )
    violations = []
    for i in range(len(trajectory) - 1):
        a, b = trajectory[i], trajectory[i + 1]
        nnc_up = b.nnc - a.nnc > z * math.hypot(a.nnc_se, b.nnc_se)
        mr_down = a.mr - b.mr > z * math.hypot(a.mr_se, b.mr_se)
        if nnc_up and mr_down:
            violations.append(i)
    return violations


def run_dependence_check(law=None, m: int = 500, k: int = 3, reps: int = 50, seed: Optional[int] = None,
                         mode=ExpectationMode.EXACT, threads: int = 1):
    """nnc of the independence breaker against nnc of the true sampler on fresh training sets

    Returns
    -------
    dict
        ``breaker`` and ``true`` (mean, std, stderr, values) and ``separation``, the difference of the means in
        units of their combined standard error

    """
    law = CorrelatedLine() if law is None else as_law(law)
    seed = random_root() if seed is None else seed
    exp = experiment_id(f"dependence/{getattr(law, 'name', law)}/m={m}/k={k}")
    d = getattr(law, "d", 2)

    def one(r):
        path = SeedPath(seed, exp, r, Role.TRAINING)
        training = law.sample(d, m, path, Label.EMPIRICAL)
        breaker = GeneratorSpec(GeneratorKind.INDEPENDENCE_BREAKER, training, path.child(role=Role.GENERATOR))
        true = GeneratorSpec(GeneratorKind.TRUE_SAMPLER, training, path.child(role=Role.GENERATED), law=law)
        breaker, true = generate(breaker), generate(true)
        return nnc(training, breaker, k, mode).nnc, nnc(training, true, k, mode).nnc

    pairs = map_repetitions(one, reps, threads)
    out = {}
    for j, name in enumerate(("breaker", "true")):
        values = [p[j] for p in pairs]
        mean, std, stderr = summarize(values)
        out[name] = {"mean": mean, "std": std, "stderr": stderr, "values": values}
    out["separation"] = (out["breaker"]["mean"] - out["true"]["mean"]) / math.hypot(
        out["breaker"]["stderr"], out["true"]["stderr"]
    )
    logger.info(
        f"Dependence check: breaker nnc {out['breaker']['mean']:.5f}, true nnc {out['true']['mean']:.5f}, "
        f"separation {out['separation']:.1f} standard errors"
    )
    return out
