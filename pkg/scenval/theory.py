"""Reference values for the memorizing ratio under the null hypothesis.

When empirical and generated points are iid from one continuous density f on R^d, the number S of generated points
falling in the ball of radius rho * R around an empirical point (R its nearest-neighbour distance) has limiting law

    Q(s) = integral of rho^-d f^(2+s)(x) / (f(x) + rho^-d f(x))^(s+1) dx

which simplifies to rho^(ds) / (rho^d + 1)^(s+1), whatever f is. The memorizing ratio converges in mean square to
1 - Q(0) = rho^d / (rho^d + 1).

:func:`q_quadrature` integrates the unsimplified expression numerically and serves as the oracle the closed form is
checked against.
"""
import logging
import math
import warnings
from dataclasses import dataclass
from typing import Iterable, List

from scipy import integrate

from .core import check_rho
from .exceptions import InputError, QuadratureNotConverged, UnsupportedDimension
from .sampling import Density, DensityKind
from . import log_name

logger = logging.getLogger(f"{log_name}{__name__}")

Q_TOLERANCE = 1e-8
ORACLE_TOLERANCE = 1e-6
MAX_EVALUATIONS = 10_000_000
TABLE1_RHOS = (0.1, 0.3, 0.5, 0.7, 0.9)


def _check(rho, d, s=0):
    check_rho(rho)
    if int(d) != d or d < 1:
        raise InputError(f"d must be a positive integer, got {d}")
    if int(s) != s or s < 0:
        raise InputError(f"s must be a nonnegative integer, got {s}")


def mr_limit(rho: float, d: int) -> float:
    """rho^d / (rho^d + 1), the mean square limit of the memorizing ratio"""
    _check(rho, d)
    rd = rho ** d
    return rd / (rd + 1.0)


def q_closed_form(s: int, rho: float, d: int) -> float:
    """Limiting probability that exactly ``s`` generated points fall in the shrunken ball"""
    _check(rho, d, s)
    rd = rho ** d
    return rd ** s / (rd + 1.0) ** (s + 1)


def q_partial_sum(S: int, rho: float, d: int) -> float:
    """Q(0) + ... + Q(S)"""
    return math.fsum(q_closed_form(s, rho, d) for s in range(S + 1))


def q_tail(S: int, rho: float, d: int) -> float:
    """1 - q_partial_sum(S), computed without cancellation"""
    _check(rho, d, S)
    return mr_limit(rho, d) ** (S + 1)


def indicator_variance_limit(rho: float, d: int) -> float:
    """Limiting variance Q(0) - Q(0)^2 of one memorization indicator"""
    q0 = q_closed_form(0, rho, d)
    return q0 * (1.0 - q0)


class _BudgetExceeded(Exception):
    pass


def _compact_lower(lower: float) -> float:
    """t such that t / (1 - t^2) == lower, for the map x = t / (1 - t^2) of (-1, 1) onto R"""
    if math.isinf(lower):
        return -1.0
    if lower == 0.0:
        return 0.0
    return (-1.0 + math.sqrt(1.0 + 4.0 * lower * lower)) / (2.0 * lower)


def _integrate(marginal_integrand, density: Density, d: int, epsabs):
    """Integrate ``marginal_integrand(f_joint)`` over R^d after mapping each coordinate to (-1, 1).

    ``marginal_integrand`` receives the joint density value. Returns (estimate, error estimate, evaluations).
    """
    if d not in (1, 2):
        raise UnsupportedDimension(f"The quadrature oracle covers d=1 and d=2, not d={d}")

    pdf = density.marginal_pdf_scalar
    evaluations = [0]

    def mapped(t):
        one_minus = 1.0 - t * t
        return t / one_minus, (1.0 + t * t) / (one_minus * one_minus)

    def integrand(*ts):
        evaluations[0] += 1
        if evaluations[0] > MAX_EVALUATIONS:
            raise _BudgetExceeded()
        f = 1.0
        jac = 1.0
        for t in ts:
            x, dx = mapped(t)
            f *= pdf(x)
            jac *= dx
        if f <= 0.0:
            return 0.0
        return marginal_integrand(f) * jac

    lower = _compact_lower(density.support_lower)
    opts = {"epsabs": epsabs, "epsrel": epsabs, "limit": 200}

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        try:
            if d == 1:
                value, error = integrate.quad(integrand, lower, 1.0, **opts)
            else:
                value, error = integrate.nquad(integrand, [(lower, 1.0), (lower, 1.0)], opts=[opts, opts])
        except _BudgetExceeded:
            raise QuadratureNotConverged(
                f"Quadrature over {density.name} in d={d} exceeded {MAX_EVALUATIONS} integrand evaluations"
            )

    return value, error, evaluations[0]


def q_quadrature(s: int, rho: float, d: int, density, tolerance: float = Q_TOLERANCE) -> float:
    """Numerically integrate the Q(s) integrand for ``density`` over R^d

    Parameters
    ----------
    s : int
        number of generated points in the ball
    rho : float
        in (0, 1]
    d : int
        1 or 2
    density : Density or str
        product law with one of the reference marginals
    tolerance : float
        largest accepted error estimate

    Returns
    -------
    float

    Raises
    ------
    UnsupportedDimension
        d > 2
    QuadratureNotConverged
        the error estimate is above ``tolerance`` or the evaluation budget ran out

    """
    _check(rho, d, s)
    density = Density(density)

    # log space keeps f^(2+s) and (f + rho^-d f)^(s+1) finite for small f and large s
    log_rho_d = -d * math.log(rho)
    log_scale = math.log1p(rho ** -d)

    def q_integrand(f):
        log_f = math.log(f)
        return math.exp(log_rho_d + (2 + s) * log_f - (s + 1) * (log_f + log_scale))

    value, error, n_eval = _integrate(q_integrand, density, d, tolerance / 100.0)
    logger.debug(f"Q({s}) rho={rho} d={d} {density.name}: {value:.12f} +/- {error:.2e} ({n_eval} evaluations)")

    if not error <= tolerance:
        raise QuadratureNotConverged(
            f"Q({s}) for rho={rho}, d={d}, {density.name}: error estimate {error:.3e} above {tolerance:.1e}",
            estimate=value,
            error_estimate=error,
        )
    return value


def total_mass(density, d: int) -> float:
    """Integral of the joint pdf over R^d (should be 1)"""
    density = Density(density)
    value, error, _ = _integrate(lambda f: f, density, d, Q_TOLERANCE / 100.0)
    if not error <= Q_TOLERANCE:
        raise QuadratureNotConverged(
            f"Total mass of {density.name} in d={d}: error estimate {error:.3e}", estimate=value, error_estimate=error
        )
    return value


@dataclass(frozen=True)
class OracleCell:
    s: int
    rho: float
    d: int
    density: str
    closed_form: float
    quadrature: float

    @property
    def difference(self) -> float:
        return abs(self.quadrature - self.closed_form)

    def passed(self, tolerance=ORACLE_TOLERANCE) -> bool:
        return self.difference <= tolerance

    def to_dict(self):
        return {
            "s": self.s,
            "rho": self.rho,
            "d": self.d,
            "density": self.density,
            "closed_form": self.closed_form,
            "quadrature": self.quadrature,
            "difference": self.difference,
        }


def oracle_grid(
    smax: int = 5,
    rhos: Iterable[float] = TABLE1_RHOS,
    dims: Iterable[int] = (1, 2),
    densities: Iterable = tuple(DensityKind),
) -> List[OracleCell]:
    """Closed form against quadrature over every (s, rho, d, density) combination"""
    cells = []
    for density in densities:
        density = Density(density)
        for d in dims:
            for rho in rhos:
                for s in range(smax + 1):
                    cells.append(
                        OracleCell(
                            s=s,
                            rho=float(rho),
                            d=int(d),
                            density=density.name,
                            closed_form=q_closed_form(s, rho, d),
                            quadrature=q_quadrature(s, rho, d, density),
                        )
                    )
    failed = sum(not cell.passed() for cell in cells)
    logger.info(f"Oracle grid: {len(cells)} cells, {failed} above {ORACLE_TOLERANCE:.0e}")
    return cells
