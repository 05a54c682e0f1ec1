"""
Hybrid operator splitting (HOS) for the INa Markov chain.

Each step applies exp(A0 dt) and exp(A1 dt) through closed-form coefficients
of the fast linear sub-chains, then one forward Euler step on the slow part A2.
The voltage is frozen at the start of the step for all three substeps.

Rate letters used below, all in 1/ms:

    fast at high Vm: a = R->Q, b = Q->P, c = P->O, d = O->U, e = T->U, f = S->T
    fast at low Vm:  p = O->P, q = P->Q, r = Q->R, s = U->T, w = T->S
"""

# future
from __future__ import annotations

# imports
import math
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Optional, Tuple

# packages
import numpy

# project
from inamc_app.exceptions import DegenerateRatesError, InputError
from inamc_app.linalg.eig import exp_reference
from inamc_app.logger import create_logger
from inamc_app.model.generators import assemble_split
from inamc_app.model.rates import RateSet
from inamc_app.tables.grid import VoltageGrid, lookup
from inamc_app.tables.rate_table import RateTable

# create logger
LOGGER = create_logger(__name__)

# smallest accepted |rate difference| in a coefficient denominator, 1/ms
DEFAULT_EPS_DEG = 1e-7
# smallest accepted |rate difference| relative to the larger of the two rates
DEFAULT_EPS_DEG_REL = 2e-2

# split part numbers
FAST_HIGH = 0
FAST_LOW = 1


class FastHighCoefficients(NamedTuple):
    """Decay factors m and transfer coefficients k of exp(A0 dt)."""

    m_ou: float
    m_po: float
    m_qp: float
    m_rq: float
    m_st: float
    m_tu: float
    k_po: float
    k_qo: float
    k_ro: float
    k_qp: float
    k_rp: float
    k_rq: float
    k_st: float
    k_su: float
    k_pu: float
    k_qu: float
    k_ru: float


class FastLowCoefficients(NamedTuple):
    """Decay factors m and transfer coefficients l of exp(A1 dt)."""

    m_op: float
    m_pq: float
    m_qr: float
    m_ts: float
    m_ut: float
    l_op: float
    l_oq: float
    l_pq: float
    l_or: float
    l_pr: float
    l_us: float
    l_ut: float


def _check_denominators(
    pairs: Iterable[Tuple[str, float, float]], eps_deg: float, eps_deg_rel: float
) -> None:
    """
    Reject rate pairs too close to divide by their difference.

    The threshold is max(eps_deg, eps_deg_rel * max(|x|, |y|)).

    Args:
        pairs: Triples of (label, x, y).
        eps_deg: Absolute floor on |x - y|, 1/ms.
        eps_deg_rel: Smallest accepted |x - y| / max(|x|, |y|).

    Raises:
        DegenerateRatesError: Some pair is closer than the threshold.
    """
    for label, x, y in pairs:
        threshold = max(eps_deg, eps_deg_rel * max(abs(x), abs(y)))
        if abs(x - y) < threshold:
            raise DegenerateRatesError(
                f"Rate difference {label} = {x - y:.3e} below {threshold:.3e} 1/ms"
            )


def fast_high_coefficients(
    r: RateSet,
    dt: float,
    eps_deg: float = DEFAULT_EPS_DEG,
    eps_deg_rel: float = DEFAULT_EPS_DEG_REL,
) -> FastHighCoefficients:
    """
    Closed-form coefficients of exp(A0 dt).

    A0 holds two linear chains, R -> Q -> P -> O -> U and S -> T -> U, so every
    entry of its exponential is a sum of exponentials with partial-fraction
    weights.

    Args:
        r: Rates at the frozen voltage.
        dt: Time step, ms.
        eps_deg: Degeneracy threshold for rate differences, 1/ms.
        eps_deg_rel: Relative degeneracy threshold.

    Returns:
        FastHighCoefficients: The coefficients.

    Raises:
        InputError: Negative dt.
        DegenerateRatesError: Two chain rates (nearly) coincide.
    """
    if not dt >= 0.0:
        raise InputError(f"Time step must be non-negative, got {dt!r}")

    a, b, c, d = r.a_rq, r.a_qp, r.a_po, r.a_ou
    e, f = r.a_tu, r.a_st
    _check_denominators(
        (
            ("aOU-aPO", d, c),
            ("aPO-aQP", c, b),
            ("aOU-aQP", d, b),
            ("aQP-aRQ", b, a),
            ("aPO-aRQ", c, a),
            ("aOU-aRQ", d, a),
            ("aTU-aST", e, f),
        ),
        eps_deg,
        eps_deg_rel,
    )

    m_ou = math.exp(-d * dt)
    m_po = math.exp(-c * dt)
    m_qp = math.exp(-b * dt)
    m_rq = math.exp(-a * dt)
    m_st = math.exp(-f * dt)
    m_tu = math.exp(-e * dt)

    # O-ward transfers along R -> Q -> P -> O
    k_po = c * (m_po - m_ou) / (d - c)
    k_qo = c * b * (m_qp - m_ou) / ((c - b) * (d - b)) - c * b * (m_po - m_ou) / (
        (c - b) * (d - c)
    )
    abc = a * b * c
    k_ro = (
        -abc * (m_qp - m_ou) / ((b - a) * (c - b) * (d - b))
        + abc * (m_po - m_ou) / ((b - a) * (c - b) * (d - c))
        + abc * (m_rq - m_ou) / ((b - a) * (c - a) * (d - a))
        - abc * (m_po - m_ou) / ((b - a) * (c - a) * (d - c))
    )
    k_qp = b * (m_qp - m_po) / (c - b)
    k_rp = -a * b * (m_qp - m_po) / ((b - a) * (c - b)) + a * b * (m_rq - m_po) / (
        (b - a) * (c - a)
    )
    k_rq = -a * (m_qp - m_rq) / (b - a)

    # S -> T -> U
    k_st = -f * (m_tu - m_st) / (e - f)
    k_su = 1.0 + (f * m_tu - e * m_st) / (e - f)

    # absorption into U
    def absorbed(x: float, m_x: float) -> float:
        return 1.0 - (d * m_x - x * m_ou) / (d - x)

    g_a = absorbed(a, m_rq)
    g_b = absorbed(b, m_qp)
    g_c = absorbed(c, m_po)
    k_pu = g_c
    k_qu = c / (c - b) * g_b - b / (c - b) * g_c
    k_ru = (
        -c * a / ((b - a) * (c - b)) * g_b
        + b * a / ((b - a) * (c - b)) * g_c
        + c * b / ((b - a) * (c - a)) * g_a
        - b * a / ((b - a) * (c - a)) * g_c
    )

    return FastHighCoefficients(
        m_ou=m_ou,
        m_po=m_po,
        m_qp=m_qp,
        m_rq=m_rq,
        m_st=m_st,
        m_tu=m_tu,
        k_po=k_po,
        k_qo=k_qo,
        k_ro=k_ro,
        k_qp=k_qp,
        k_rp=k_rp,
        k_rq=k_rq,
        k_st=k_st,
        k_su=k_su,
        k_pu=k_pu,
        k_qu=k_qu,
        k_ru=k_ru,
    )


def fast_low_coefficients(
    r: RateSet,
    dt: float,
    eps_deg: float = DEFAULT_EPS_DEG,
    eps_deg_rel: float = DEFAULT_EPS_DEG_REL,
) -> FastLowCoefficients:
    """
    Closed-form coefficients of exp(A1 dt) for the chains O -> P -> Q -> R and
    U -> T -> S.

    Args:
        r: Rates at the frozen voltage.
        dt: Time step, ms.
        eps_deg: Degeneracy threshold for rate differences, 1/ms.
        eps_deg_rel: Relative degeneracy threshold.

    Returns:
        FastLowCoefficients: The coefficients.

    Raises:
        InputError: Negative dt.
        DegenerateRatesError: Two chain rates (nearly) coincide.
    """
    if not dt >= 0.0:
        raise InputError(f"Time step must be non-negative, got {dt!r}")

    p, q, rr = r.a_op, r.a_pq, r.a_qr
    s, w = r.a_ut, r.a_ts
    _check_denominators(
        (
            ("aPQ-aOP", q, p),
            ("aQR-aOP", rr, p),
            ("aQR-aPQ", rr, q),
            ("aTS-aUT", w, s),
        ),
        eps_deg,
        eps_deg_rel,
    )

    m_op = math.exp(-p * dt)
    m_pq = math.exp(-q * dt)
    m_qr = math.exp(-rr * dt)
    m_ts = math.exp(-w * dt)
    m_ut = math.exp(-s * dt)

    l_op = p * (m_op - m_pq) / (q - p)
    l_oq = q * p * (m_op - m_qr) / ((q - p) * (rr - p)) - q * p * (m_pq - m_qr) / (
        (q - p) * (rr - q)
    )
    l_pq = q * (m_pq - m_qr) / (rr - q)
    l_or = (
        1.0
        + q * (p * m_qr - rr * m_op) / ((q - p) * (rr - p))
        - p * (q * m_qr - rr * m_pq) / ((q - p) * (rr - q))
    )
    l_pr = 1.0 + (q * m_qr - rr * m_pq) / (rr - q)
    l_us = 1.0 + (s * m_ts - w * m_ut) / (w - s)
    l_ut = s * (m_ut - m_ts) / (w - s)

    return FastLowCoefficients(
        m_op=m_op,
        m_pq=m_pq,
        m_qr=m_qr,
        m_ts=m_ts,
        m_ut=m_ut,
        l_op=l_op,
        l_oq=l_oq,
        l_pq=l_pq,
        l_or=l_or,
        l_pr=l_pr,
        l_us=l_us,
        l_ut=l_ut,
    )


def _apply_fast_high(x: List[float], k: FastHighCoefficients) -> List[float]:
    o, p, q, r, s, t, u, v, w = x
    return [
        k.m_ou * o + k.k_po * p + k.k_qo * q + k.k_ro * r,
        k.m_po * p + k.k_qp * q + k.k_rp * r,
        k.m_qp * q + k.k_rq * r,
        k.m_rq * r,
        k.m_st * s,
        k.m_tu * t + k.k_st * s,
        u
        + (1.0 - k.m_tu) * t
        + k.k_su * s
        + (1.0 - k.m_ou) * o
        + k.k_pu * p
        + k.k_qu * q
        + k.k_ru * r,
        v,
        w,
    ]


def _apply_fast_low(x: List[float], lc: FastLowCoefficients) -> List[float]:
    o, p, q, r, s, t, u, v, w = x
    return [
        lc.m_op * o,
        lc.l_op * o + lc.m_pq * p,
        lc.l_oq * o + lc.l_pq * p + lc.m_qr * q,
        lc.l_or * o + lc.l_pr * p + (1.0 - lc.m_qr) * q + r,
        lc.l_us * u + (1.0 - lc.m_ts) * t + s,
        lc.l_ut * u + lc.m_ts * t,
        lc.m_ut * u,
        v,
        w,
    ]


def _apply_slow(x: List[float], r: RateSet, dt: float) -> List[float]:
    o, p, q, rr, s, t, u, v, w = x
    a3, b3 = r.a3, r.b3
    return [
        o + dt * (r.b2 * u),
        p + dt * (a3 * u - b3 * p),
        q + dt * (a3 * t - b3 * q),
        rr + dt * (a3 * s - b3 * rr),
        s + dt * (b3 * rr - a3 * s),
        t + dt * (b3 * q - a3 * t),
        u + dt * (b3 * p + r.b4 * v - (a3 + r.b2 + r.a4) * u),
        v + dt * (r.a4 * u + r.b5 * w - (r.b4 + r.a5) * v),
        w + dt * (r.a5 * v - r.b5 * w),
    ]


def hos_fast_high(
    u: numpy.ndarray,
    r: RateSet,
    dt: float,
    eps_deg: float = DEFAULT_EPS_DEG,
    eps_deg_rel: float = DEFAULT_EPS_DEG_REL,
) -> numpy.ndarray:
    """
    First HOS substep: u' = exp(A0 dt) u via the analytic mapping.

    Args:
        u: State occupancies.
        r: Rates at the frozen voltage.
        dt: Time step, ms.
        eps_deg: Degeneracy threshold, 1/ms.
        eps_deg_rel: Relative degeneracy threshold.

    Returns:
        numpy.ndarray: Updated occupancies; V and W are unchanged.

    Raises:
        DegenerateRatesError: See fast_high_coefficients.
    """
    k = fast_high_coefficients(r, dt, eps_deg, eps_deg_rel)
    return numpy.array(_apply_fast_high(numpy.asarray(u).tolist(), k))


def hos_fast_low(
    u: numpy.ndarray,
    r: RateSet,
    dt: float,
    eps_deg: float = DEFAULT_EPS_DEG,
    eps_deg_rel: float = DEFAULT_EPS_DEG_REL,
) -> numpy.ndarray:
    """
    Second HOS substep: u' = exp(A1 dt) u via the analytic mapping.

    Args:
        u: State occupancies.
        r: Rates at the frozen voltage.
        dt: Time step, ms.
        eps_deg: Degeneracy threshold, 1/ms.
        eps_deg_rel: Relative degeneracy threshold.

    Returns:
        numpy.ndarray: Updated occupancies; V and W are unchanged.

    Raises:
        DegenerateRatesError: See fast_low_coefficients.
    """
    lc = fast_low_coefficients(r, dt, eps_deg, eps_deg_rel)
    return numpy.array(_apply_fast_low(numpy.asarray(u).tolist(), lc))


def hos_slow(u: numpy.ndarray, r: RateSet, dt: float) -> numpy.ndarray:
    """
    Third HOS substep: forward Euler on the slow part, u' = u + dt A2 u.

    Args:
        u: State occupancies.
        r: Rates at the frozen voltage.
        dt: Time step, ms.

    Returns:
        numpy.ndarray: Updated occupancies.
    """
    return numpy.array(_apply_slow(numpy.asarray(u).tolist(), r, dt))


def _fallback(x: List[float], r: RateSet, dt: float, part: int) -> List[float]:
    """Exponentiate one fast split part numerically."""
    split = assemble_split(r)
    return (exp_reference(split.parts[part], dt) @ numpy.array(x)).tolist()


def _substeps(
    x: List[float],
    r: RateSet,
    dt: float,
    high: Optional[FastHighCoefficients],
    low: Optional[FastLowCoefficients],
) -> List[float]:
    x = _fallback(x, r, dt, FAST_HIGH) if high is None else _apply_fast_high(x, high)
    x = _fallback(x, r, dt, FAST_LOW) if low is None else _apply_fast_low(x, low)
    return _apply_slow(x, r, dt)


def _coefficients_or_none(
    r: RateSet, dt: float, eps_deg: float, eps_deg_rel: float
) -> Tuple[Optional[FastHighCoefficients], Optional[FastLowCoefficients]]:
    """
    Compute both coefficient sets, substituting None for degenerate ones.
    """
    try:
        high: Optional[FastHighCoefficients] = fast_high_coefficients(
            r, dt, eps_deg, eps_deg_rel
        )
    except DegenerateRatesError as e:
        LOGGER.debug("Fast-high substep falls back to expm: %s", e)
        high = None
    try:
        low: Optional[FastLowCoefficients] = fast_low_coefficients(
            r, dt, eps_deg, eps_deg_rel
        )
    except DegenerateRatesError as e:
        LOGGER.debug("Fast-low substep falls back to expm: %s", e)
        low = None
    return high, low


def step_hos(
    u: numpy.ndarray,
    r: RateSet,
    dt: float,
    eps_deg: float = DEFAULT_EPS_DEG,
    eps_deg_rel: float = DEFAULT_EPS_DEG_REL,
) -> numpy.ndarray:
    """
    One full HOS step: slow FE after exact fast-low after exact fast-high.

    A fast substep whose rates are degenerate is exponentiated numerically
    instead of analytically.

    Args:
        u: State occupancies.
        r: Rates at the frozen voltage.
        dt: Time step, ms.
        eps_deg: Degeneracy threshold, 1/ms.
        eps_deg_rel: Relative degeneracy threshold.

    Returns:
        numpy.ndarray: Updated occupancies.
    """
    high, low = _coefficients_or_none(r, dt, eps_deg, eps_deg_rel)
    return numpy.array(_substeps(numpy.asarray(u).tolist(), r, dt, high, low))


@dataclass(frozen=True)
class HosCoefficientTable:
    """
    Rates and analytic substep coefficients at every grid voltage for one dt.

    Degenerate grid points hold None and are exponentiated numerically.

    Attributes:
        grid: The voltage grid.
        dt: Time step, ms.
        rates: Rates per grid point.
        high: Fast-high coefficients per grid point.
        low: Fast-low coefficients per grid point.
    """

    grid: VoltageGrid
    dt: float
    rates: Tuple[RateSet, ...]
    high: Tuple[Optional[FastHighCoefficients], ...]
    low: Tuple[Optional[FastLowCoefficients], ...]

    def step(self, u: numpy.ndarray, vm: float) -> numpy.ndarray:
        """
        HOS step with every coefficient looked up at the grid point nearest vm.

        Args:
            u: State occupancies.
            vm: Frozen membrane potential, mV.

        Returns:
            numpy.ndarray: Updated occupancies.
        """
        j = lookup(self.grid, vm)
        return numpy.array(
            _substeps(
                numpy.asarray(u).tolist(), self.rates[j], self.dt, self.high[j], self.low[j]
            )
        )


def build_hos_table(
    rate_table: RateTable,
    dt: float,
    eps_deg: float = DEFAULT_EPS_DEG,
    eps_deg_rel: float = DEFAULT_EPS_DEG_REL,
) -> HosCoefficientTable:
    """
    Precompute HOS coefficients over the grid of a rate table.

    Args:
        rate_table: Tabulated rates.
        dt: Time step, ms; must be positive.
        eps_deg: Degeneracy threshold, 1/ms.
        eps_deg_rel: Relative degeneracy threshold.

    Returns:
        HosCoefficientTable: The table.

    Raises:
        InputError: Non-positive dt.
    """
    if not dt > 0.0:
        raise InputError(f"Time step must be positive, got {dt!r}")

    rates = rate_table.rate_sets
    high: List[Optional[FastHighCoefficients]] = []
    low: List[Optional[FastLowCoefficients]] = []
    for rate_set in rates:
        high_j, low_j = _coefficients_or_none(rate_set, dt, eps_deg, eps_deg_rel)
        high.append(high_j)
        low.append(low_j)

    degenerate = sum(1 for k in high if k is None) + sum(1 for lc in low if lc is None)
    LOGGER.info(
        "Built HOS coefficient table for dt=%g ms over %d voltages (%d degenerate substeps)",
        dt,
        len(rates),
        degenerate,
    )
    return HosCoefficientTable(
        grid=rate_table.grid, dt=dt, rates=rates, high=tuple(high), low=tuple(low)
    )
