"""Closed-loop step simulation of a PID-controlled LTI plant.

The loop is unity feedback, ``e = r - y``, with the controller

    u = Kp * (e + (1/Ti) * integral(e) + Td * de/dt)

The loop transfer function ``C G / (1 + C G)`` is formed by polynomial
arithmetic and integrated with fixed-step RK4 from a controllable canonical
realisation.  The derivative is ideal by default, which is proper in closed
loop for any strictly proper plant; ``n_filter=N`` swaps in the filtered
derivative ``Td*s / (1 + (Td/N)*s)`` for biproper plants.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

DIVERGENCE_LIMIT = 1e6
SENTINEL = 1e6


@dataclass(frozen=True)
class TransferFunction:
    numerator: tuple[float, ...]
    denominator: tuple[float, ...]

    def __post_init__(self):
        num = tuple(float(c) for c in np.trim_zeros(np.atleast_1d(self.numerator), "f")) or (0.0,)
        den = tuple(float(c) for c in np.trim_zeros(np.atleast_1d(self.denominator), "f"))
        if not den:
            raise ValueError("denominator leading coefficient must be non-zero")
        if len(num) > len(den):
            raise ValueError("transfer function must be proper")
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    def state_space(self):
        """Controllable canonical realisation ``(A, B, C, D)``."""
        den = np.asarray(self.denominator) / self.denominator[0]
        num = np.asarray(self.numerator) / self.denominator[0]
        n = len(den) - 1
        num = np.concatenate([np.zeros(n + 1 - len(num)), num])
        d = num[0]
        if n == 0:
            return np.zeros((0, 0)), np.zeros((0, 1)), np.zeros((1, 0)), d
        a = np.zeros((n, n))
        a[0, :] = -den[1:]
        a[1:, :-1] = np.eye(n - 1)
        b = np.zeros((n, 1))
        b[0, 0] = 1.0
        c = (num[1:] - d * den[1:]).reshape(1, n)
        return a, b, c, d


# 7 / (s^3 + 3 s^2 + 3 s + 1)
THIRD_ORDER_PLANT = TransferFunction((7.0,), (1.0, 3.0, 3.0, 1.0))


@dataclass(frozen=True)
class PidParams:
    kp: float
    ti: float
    td: float = 0.0

    def __post_init__(self):
        if self.ti <= 0:
            raise ValueError("integral time ti must be positive")
        if self.kp < 0 or self.td < 0:
            raise ValueError("kp and td must be non-negative")


ZIEGLER_NICHOLS_PID = PidParams(0.311, 2.3643, 0.5911)
EAGLE_PID = PidParams(0.5366, 3.3940, 0.8485)


@dataclass(frozen=True)
class StepResponse:
    t: np.ndarray
    y: np.ndarray
    stable: bool = True

    def to_csv(self, path):
        path = Path(path)
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["t", "y"])
            for ti, yi in zip(self.t, self.y):
                w.writerow([repr(float(ti)), repr(float(yi))])


@dataclass(frozen=True)
class StepResponseMetrics:
    rise_time: float
    settling_time: float
    overshoot: float
    final_value: float
    stable: bool

    @classmethod
    def unstable(cls) -> "StepResponseMetrics":
        return cls(SENTINEL, SENTINEL, SENTINEL, math.nan, False)


def controller_transfer(pid: PidParams, n_filter: float | None = None) -> TransferFunction:
    """PID as a rational function of s.

    ``n_filter=None`` keeps the ideal derivative, giving the improper
    ``Kp (Ti Td s^2 + Ti s + 1) / (Ti s)``; a finite ``n_filter`` uses
    ``Td s / (1 + (Td/N) s)`` instead.
    """
    kp, ti, td = pid.kp, pid.ti, pid.td
    if n_filter is None or td == 0:
        num = (kp * ti * td, kp * ti, kp)
        den = (ti, 0.0)
    else:
        tf = td / n_filter
        num = (kp * (ti * tf + ti * td), kp * (ti + tf), kp)
        den = (ti * tf, ti, 0.0)
    return _tf_unchecked(num, den)


def _tf_unchecked(num, den) -> TransferFunction:
    tf = object.__new__(TransferFunction)
    object.__setattr__(tf, "numerator", tuple(float(c) for c in num))
    object.__setattr__(tf, "denominator", tuple(float(c) for c in den))
    return tf


def closed_loop_transfer(plant: TransferFunction, pid: PidParams, n_filter: float | None = None) -> TransferFunction:
    """Unity-feedback loop ``C G / (1 + C G)`` from reference to output."""
    ctrl = controller_transfer(pid, n_filter)
    open_num = np.polymul(ctrl.numerator, plant.numerator)
    open_den = np.polymul(ctrl.denominator, plant.denominator)
    return TransferFunction(tuple(open_num), tuple(np.polyadd(open_den, open_num)))


def rk4_map(a: np.ndarray, b: np.ndarray, dt: float):
    """One RK4 step of ``x' = A x + b`` (constant b) as ``x -> M x + q``."""
    n = a.shape[0]
    h = dt * a
    eye = np.eye(n)
    h2 = h @ h
    h3 = h2 @ h
    m = eye + h + h2 / 2.0 + h3 / 6.0 + (h3 @ h) / 24.0
    q = dt * (eye + h / 2.0 + h2 / 6.0 + h3 / 24.0) @ b
    return m, q


def closed_loop_step(
    plant: TransferFunction,
    pid: PidParams,
    t_end: float = 20.0,
    dt: float = 1e-3,
    reference: float = 1.0,
    n_filter: float | None = None,
    block: int = 200,
) -> StepResponse:
    """Response of the closed loop to a step of height ``reference`` at t=0.

    Integration is fixed-step RK4.  Because the loop is LTI with a constant
    input, each step is the affine map ``x -> M x + q``; samples are produced
    ``block`` steps at a time from precomputed powers of ``M``.
    """
    if dt <= 0 or t_end <= 0:
        raise ValueError("dt and t_end must be positive")
    a, b, c, d = closed_loop_transfer(plant, pid, n_filter).state_space()
    steps = int(round(t_end / dt))
    t = np.arange(steps + 1) * dt
    n = a.shape[0]
    m, q = rk4_map(a, b[:, 0] * reference, dt)

    # rows j = 0..block-1: c M^j and c (I + M + ... + M^(j-1)) q
    c_pow = np.empty((block, n))
    c_acc = np.empty(block)
    row, acc = c[0].copy(), 0.0
    for j in range(block):
        c_pow[j] = row
        c_acc[j] = acc
        acc += row @ q
        row = row @ m
    m_block = np.linalg.matrix_power(m, block)
    s_block = np.zeros(n)
    for _ in range(block):
        s_block = m @ s_block + q

    y = np.empty(steps + 1)
    x = np.zeros(n)
    dr = d * reference
    for start in range(0, steps + 1, block):
        stop = min(start + block, steps + 1)
        seg = c_pow[: stop - start] @ x + c_acc[: stop - start] + dr
        bad = ~np.isfinite(seg) | (np.abs(seg) > DIVERGENCE_LIMIT)
        if bad.any():
            k = start + int(np.argmax(bad))
            y[start:k] = seg[: k - start]
            return StepResponse(t[:k], y[:k], stable=False)
        y[start:stop] = seg
        x = m_block @ x + s_block
    return StepResponse(t, y, True)


def is_asymptotically_stable(plant: TransferFunction, pid: PidParams, n_filter: float | None = None) -> bool:
    poles = np.roots(closed_loop_transfer(plant, pid, n_filter).denominator)
    return bool(np.all(poles.real < 0))


def response_metrics(response: StepResponse, band: float = 0.02) -> StepResponseMetrics:
    """Rise (10-90 %), settling (band around final value) and percent overshoot.

    The final value is the last sample; a response still drifting by more
    than the band over the trailing 10 % of samples counts as unsettled.
    """
    if not response.stable:
        return StepResponseMetrics.unstable()
    t, y = np.asarray(response.t), np.asarray(response.y)
    if t.size == 0:
        raise ValueError("empty response")
    tail = max(1, t.size // 10)
    final = float(y[-1])
    if not np.isfinite(final) or abs(final) < 1e-12:
        return StepResponseMetrics.unstable()
    # drift in the tail means the response has not settled (or is growing)
    if np.max(np.abs(y[-tail:] - final)) > band * abs(final):
        return StepResponseMetrics.unstable()
    z = y / final
    t10 = _first_crossing(t, z, 0.1)
    t90 = _first_crossing(t, z, 0.9)
    rise = t90 - t10
    outside = np.nonzero(np.abs(z - 1.0) > band)[0]
    if outside.size == 0:
        settling = float(t[0])
    elif outside[-1] + 1 < t.size:
        i = outside[-1]
        settling = _interp_time(t, np.abs(z - 1.0), i, band)
    else:
        settling = float(t[-1])
    overshoot = max(0.0, 100.0 * (float(np.max(z)) - 1.0))
    return StepResponseMetrics(rise, settling, overshoot, final, True)


def _first_crossing(t, z, level):
    idx = np.nonzero(z >= level)[0]
    if idx.size == 0:
        return math.inf
    i = idx[0]
    if i == 0:
        return float(t[0])
    return _interp_time(t, z, i - 1, level)


def _interp_time(t, z, i, level):
    z0, z1 = z[i], z[i + 1]
    if z1 == z0:
        return float(t[i + 1])
    return float(t[i] + (level - z0) * (t[i + 1] - t[i]) / (z1 - z0))
