"""Seeded random variates for the reference densities.

This is the only module that creates random numbers. Every draw is addressed by a :class:`SeedPath`
``(root, experiment, repetition, role)``, so a run can be repeated exactly whatever order or thread the draws
happen on. Samples are produced by inverse-CDF from uniforms strictly inside (0, 1), coordinate by coordinate.
"""
import hashlib
import logging
import math
from dataclasses import dataclass, replace
from enum import Enum, IntEnum

import numpy as np
from scipy import special, stats

from .core import Label, PointSet, make_point_set
from .exceptions import DimensionMismatch, InputError
from . import log_name

logger = logging.getLogger(f"{log_name}{__name__}")

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


class DensityKind(Enum):
    NORMAL = "NORMAL"  # standard normal
    EXPONENTIAL = "EXPONENTIAL"  # mean 1
    STUDENT_T = "STUDENT_T"  # 1 degree of freedom
    CAUCHY = "CAUCHY"  # location 1, scale 1
    PARETO = "PARETO"  # shape 1, scale 1


class Role(IntEnum):
    EMPIRICAL = 0
    GENERATED = 1
    GENERATOR = 2
    TRAINING = 3


def experiment_id(tag: str) -> int:
    """Stable 32 bit id for a text tag, e.g. ``"table1/NORMAL/rho=0.5/m=500"``"""
    return int.from_bytes(hashlib.blake2b(tag.encode("utf-8"), digest_size=4).digest(), "big")


def random_root() -> int:
    """Fresh 64 bit root seed, used when the user does not supply one"""
    return int(np.random.default_rng().integers(0, 2 ** 64, dtype=np.uint64))


@dataclass(frozen=True)
class SeedPath:
    """Address of one independent random stream"""

    root: int
    experiment: int = 0
    repetition: int = 0
    role: Role = Role.EMPIRICAL

    def __post_init__(self):
        if not 0 <= int(self.root) < 2 ** 64:
            raise InputError(f"Seed must be an unsigned 64 bit integer, got {self.root}")

    def child(self, **changes) -> "SeedPath":
        return replace(self, **changes)

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(
            entropy=int(self.root), spawn_key=(int(self.experiment), int(self.repetition), int(self.role))
        )
        return np.random.Generator(np.random.PCG64(seq))


def open_uniforms(seed_path: SeedPath, size) -> np.ndarray:
    """Uniforms on the 2**52 grid shifted by half a step: never 0, never 1"""
    ints = seed_path.generator().integers(0, 2 ** 52, size=size, dtype=np.uint64)
    return (ints.astype(np.float64) + 0.5) * 2.0 ** -52


class Density:
    """Product law with identical marginals of one :class:`DensityKind`"""

    def __init__(self, kind):
        if isinstance(kind, Density):
            kind = kind.kind
        if isinstance(kind, str):
            try:
                kind = DensityKind(kind.upper())
            except ValueError:
                raise InputError(f"Unknown density {kind}; expected one of {[k.value for k in DensityKind]}")
        self.kind = DensityKind(kind)

    def __repr__(self):
        return f"Density({self.kind.value})"

    def __eq__(self, other):
        return isinstance(other, Density) and other.kind == self.kind

    def __hash__(self):
        return hash(self.kind)

    @property
    def name(self) -> str:
        return self.kind.value

    @property
    def support_lower(self) -> float:
        if self.kind == DensityKind.EXPONENTIAL:
            return 0.0
        if self.kind == DensityKind.PARETO:
            return 1.0
        return -math.inf

    def marginal_pdf(self, x):
        x = np.asarray(x, dtype=float)
        kind = self.kind
        if kind == DensityKind.NORMAL:
            return _INV_SQRT_2PI * np.exp(-0.5 * x * x)
        if kind == DensityKind.EXPONENTIAL:
            return np.where(x >= 0.0, np.exp(-np.maximum(x, 0.0)), 0.0)
        if kind == DensityKind.STUDENT_T:
            return 1.0 / (np.pi * (1.0 + x * x))
        if kind == DensityKind.CAUCHY:
            return 1.0 / (np.pi * (1.0 + (x - 1.0) ** 2))
        return np.where(x >= 1.0, 1.0 / np.maximum(x, 1.0) ** 2, 0.0)

    def marginal_pdf_scalar(self, x: float) -> float:
        """Same as :meth:`marginal_pdf` for a single float, without numpy overhead (quadrature inner loop)"""
        kind = self.kind
        if kind == DensityKind.NORMAL:
            return _INV_SQRT_2PI * math.exp(-0.5 * x * x)
        if kind == DensityKind.EXPONENTIAL:
            return math.exp(-x) if x >= 0.0 else 0.0
        if kind == DensityKind.STUDENT_T:
            return 1.0 / (math.pi * (1.0 + x * x))
        if kind == DensityKind.CAUCHY:
            return 1.0 / (math.pi * (1.0 + (x - 1.0) ** 2))
        return 1.0 / (x * x) if x >= 1.0 else 0.0

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        kind = self.kind
        if kind == DensityKind.NORMAL:
            return special.ndtr(x)
        if kind == DensityKind.EXPONENTIAL:
            return np.where(x > 0.0, -np.expm1(-np.maximum(x, 0.0)), 0.0)
        if kind == DensityKind.STUDENT_T:
            return 0.5 + np.arctan(x) / np.pi
        if kind == DensityKind.CAUCHY:
            return 0.5 + np.arctan(x - 1.0) / np.pi
        return np.where(x > 1.0, 1.0 - 1.0 / np.maximum(x, 1.0), 0.0)

    def ppf(self, u):
        u = np.asarray(u, dtype=float)
        kind = self.kind
        if kind == DensityKind.NORMAL:
            return special.ndtri(u)
        if kind == DensityKind.EXPONENTIAL:
            return -np.log1p(-u)
        if kind == DensityKind.STUDENT_T:
            return np.tan(np.pi * (u - 0.5))
        if kind == DensityKind.CAUCHY:
            return 1.0 + np.tan(np.pi * (u - 0.5))
        return 1.0 / (1.0 - u)

    def pdf(self, x):
        """Product of the marginal densities over the last axis of ``x``"""
        return np.prod(self.marginal_pdf(np.atleast_1d(x)), axis=-1)

    def sample(self, d: int, m: int, seed_path: SeedPath, label=Label.EMPIRICAL) -> PointSet:
        return make_point_set(self.ppf(open_uniforms(seed_path, (m, d))), label)


class CorrelatedLine:
    """Points near the diagonal: x ~ N(0, 1), y = x + noise * N(0, 1). Always two dimensional."""

    d = 2
    name = "CORRELATED_LINE"

    def __init__(self, noise: float = 0.1):
        if not noise > 0.0:
            raise InputError(f"noise must be positive, got {noise}")
        self.noise = float(noise)

    def __repr__(self):
        return f"CorrelatedLine(noise={self.noise})"

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        z = (x[..., 1] - x[..., 0]) / self.noise
        return _INV_SQRT_2PI ** 2 * np.exp(-0.5 * (x[..., 0] ** 2 + z * z)) / self.noise

    def sample(self, d: int, m: int, seed_path: SeedPath, label=Label.EMPIRICAL) -> PointSet:
        if d != self.d:
            raise DimensionMismatch(f"The correlated line law is two dimensional, d={d} was requested")
        normals = special.ndtri(open_uniforms(seed_path, (m, 2)))
        points = np.column_stack([normals[:, 0], normals[:, 0] + self.noise * normals[:, 1]])
        return make_point_set(points, label)


def as_law(density):
    """Accept a law object, a :class:`DensityKind` or a density name"""
    if isinstance(density, (Density, CorrelatedLine)):
        return density
    return Density(density)


def sample(density, d: int, m: int, seed_path: SeedPath, label=Label.EMPIRICAL) -> PointSet:
    """Draw ``m`` points in R^d with iid coordinates from ``density``

    Parameters
    ----------
    density : Density, DensityKind, str or CorrelatedLine
    d : int
    m : int
        at least 2
    seed_path : SeedPath
        the same path always gives the same points
    label : Label

    Returns
    -------
    PointSet

    """
    if int(d) != d or d < 1:
        raise InputError(f"Dimension must be a positive integer, got {d}")
    return as_law(density).sample(int(d), int(m), seed_path, label)


def pdf(density, x) -> float:
    """Joint density at the point ``x``. Zero outside the support."""
    return float(as_law(density).pdf(np.asarray(x, dtype=float)))


def ks_check(density, n: int, seed_path: SeedPath):
    """Kolmogorov-Smirnov test of ``n`` one dimensional draws against the analytic CDF

    Returns
    -------
    scipy.stats KstestResult
        ``statistic`` and ``pvalue``

    """
    law = Density(density)
    draws = law.sample(1, n, seed_path).points[:, 0]
    result = stats.kstest(draws, law.cdf)
    logger.debug(f"KS check {law.name}: D={result.statistic:.5f} p={result.pvalue:.4f}")
    return result
