"""Baumol-Tobin cash management and its digital-currency variant.

Holding cash costs forgone interest r on the average balance K/2, and each
of the Y/K conversions costs b. A cheaper conversion channel (b1 < b)
lowers the optimal average balance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class BaumolParams:
    income: float  # Y, currency units per period
    conversion_cost: float  # b, per conversion
    interest_rate: float  # r, per period

    def __post_init__(self):
        for name in ("income", "conversion_cost", "interest_rate"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")


@dataclass(frozen=True)
class BaumolSolution:
    k_star: float
    m_star: float
    total_cost: float


def total_cost(params: BaumolParams, K: float) -> float:
    if not K > 0:
        raise ValueError("withdrawal size K must be positive")
    return K / 2.0 * params.interest_rate + params.income / K * params.conversion_cost


def optimal_cash(params: BaumolParams) -> BaumolSolution:
    Y, b, r = params.income, params.conversion_cost, params.interest_rate
    k_star = math.sqrt(2.0 * b * Y / r)
    return BaumolSolution(k_star, math.sqrt(b * Y / (2.0 * r)), total_cost(params, k_star))


@dataclass(frozen=True)
class Substitution:
    m_cash: float
    m_cbdc: float
    delta: float


def cbdc_substitution(params: BaumolParams, b1: float) -> Substitution:
    """Average money demand with conversion cost ``b1`` versus the cash baseline."""
    if not b1 > 0:
        raise ValueError("CBDC conversion cost b1 must be positive")
    m_cash = optimal_cash(params).m_star
    if b1 == params.conversion_cost:
        return Substitution(m_cash, m_cash, 0.0)
    m_cbdc = optimal_cash(BaumolParams(params.income, b1, params.interest_rate)).m_star
    return Substitution(m_cash, m_cbdc, m_cbdc - m_cash)


@dataclass(frozen=True)
class Elasticities:
    wrt_income: float
    wrt_cost: float
    wrt_rate: float
    numeric_income: float
    numeric_cost: float
    numeric_rate: float


def elasticities(params: BaumolParams, rel_step: float = 1e-6) -> Elasticities:
    """Analytic elasticities of M* (+1/2, +1/2, -1/2) with central-difference checks."""

    def m_of(Y, b, r):
        return optimal_cash(BaumolParams(Y, b, r)).m_star

    Y, b, r = params.income, params.conversion_cost, params.interest_rate

    def numeric(i):
        x = [Y, b, r]
        h = rel_step * x[i]
        up, dn = list(x), list(x)
        up[i] += h
        dn[i] -= h
        return (m_of(*up) - m_of(*dn)) / (2 * h) * x[i] / m_of(*x)

    return Elasticities(0.5, 0.5, -0.5, numeric(0), numeric(1), numeric(2))


def sweep(params: BaumolParams, b1: float, param: str, lo: float, hi: float, steps: int) -> list[dict]:
    """Comparative statics over ``param`` (``b1``, ``r``, ``b`` or ``Y``) on an even grid."""
    if steps < 2:
        raise ValueError("a sweep needs at least two steps")
    if param not in ("b1", "r", "b", "Y"):
        raise ValueError(f"cannot sweep {param!r}; choose b1, r, b or Y")
    out = []
    for i in range(steps):
        v = lo + (hi - lo) * i / (steps - 1)
        Y, b, r, c = params.income, params.conversion_cost, params.interest_rate, b1
        if param == "b1":
            c = v
        elif param == "r":
            r = v
        elif param == "b":
            b = v
        else:
            Y = v
        res = cbdc_substitution(BaumolParams(Y, b, r), c)
        out.append({param: v, "m_cash": res.m_cash, "m_cbdc": res.m_cbdc, "delta": res.delta})
    return out
