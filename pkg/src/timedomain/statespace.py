from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from approx.rational import RationalTf
from shared.errors import DomainError
from utils.logging import log
from utils.serialization import write_csv

TRACE_HEADER = ("t_s", "y")


@dataclass(frozen=True, eq=False)
class StateSpace:
    """Single-input single-output realization x' = Ax + Bu, y = Cx + Du

    Attributes:
        A (np.ndarray): n x n
        B (np.ndarray): n x 1
        C (np.ndarray): 1 x n
        D (float): Direct feedthrough
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: float

    def __post_init__(self: StateSpace) -> None:
        n = self.A.shape[0]
        if self.A.shape != (n, n) or self.B.shape != (n, 1) or self.C.shape != (1, n):
            raise DomainError(
                f"inconsistent dimensions A{self.A.shape} B{self.B.shape} "
                f"C{self.C.shape}"
            )

    @property
    def order(self: StateSpace) -> int:
        return self.A.shape[0]

    def frequency_response(self: StateSpace, omega: np.ndarray) -> np.ndarray:
        """C (j omega I - A)^-1 B + D at each omega"""
        eye = np.eye(self.order)
        return np.array(
            [
                (self.C @ np.linalg.solve(1j * w * eye - self.A, self.B))[0, 0] + self.D
                for w in np.atleast_1d(omega)
            ]
        )


@dataclass(frozen=True, eq=False)
class StepResponse:
    """Unit step response on a uniform grid starting at t = 0

    Attributes:
        t (np.ndarray): Sample times (s)
        y (np.ndarray): Output samples, all finite
        dt (float): Sampling step (s)
        diverged (bool): True when the trace was cut short by a non-finite state
    """

    t: np.ndarray
    y: np.ndarray
    dt: float
    diverged: bool = False

    def to_csv(self: StepResponse) -> str:
        return write_csv(TRACE_HEADER, (self.t, self.y))


def to_state_space(tf: RationalTf) -> StateSpace:
    """Controllable canonical form of a proper rational transfer function.

    With den made monic, x_i' = x_{i+1} for i < n and
    x_n' = -sum_k a_k x_{k+1} + u. D is the ratio of the leading coefficients and C
    holds the strictly proper remainder.

    Args:
        tf (RationalTf): deg(num) <= deg(den)

    Returns:
        StateSpace: Realization with the same transfer function

    Raises:
        DomainError: If tf is improper
    """
    if not tf.is_proper:
        raise DomainError(
            f"cannot realize an improper transfer function "
            f"(deg num {tf.num_degree} > deg den {tf.den_degree})"
        )
    lead = tf.den[-1]
    a = tf.den / lead
    n = tf.den_degree
    b = np.zeros(n + 1)
    b[: len(tf.num)] = tf.num / lead

    d = float(b[n])
    remainder = b[:n] - d * a[:n]

    A = np.zeros((n, n))
    B = np.zeros((n, 1))
    if n:
        A[:-1, 1:] = np.eye(n - 1)
        A[-1, :] = -a[:n]
        B[-1, 0] = 1.0
    return StateSpace(A, B, remainder.reshape(1, n), d)


def simulate_step(ss: StateSpace, t_max: float, dt: float) -> StepResponse:
    """Unit step response by exact zero-order-hold discretization.

    expm([[A, B], [0, 0]] dt) = [[Ad, Bd], [0, I]] gives x[k+1] = Ad x[k] + Bd.

    Args:
        ss (StateSpace): Realization, zero initial state
        t_max (float): Horizon (s), at least 10 * dt
        dt (float): Step (s), positive

    Returns:
        StepResponse: Trace on t = 0, dt, ..., t_max; truncated at the first
            non-finite state with `diverged` set
    """
    if not dt > 0:
        raise DomainError(f"dt must be positive, got {dt}")
    if t_max < 10 * dt:
        raise DomainError(f"t_max must be at least 10 * dt, got {t_max}")

    n = ss.order
    steps = int(round(t_max / dt))
    t = np.arange(steps + 1) * dt

    block = np.zeros((n + 1, n + 1))
    block[:n, :n] = ss.A
    block[:n, n:] = ss.B
    phi = scipy.linalg.expm(block * dt)
    ad, bd = phi[:n, :n], phi[:n, n]

    c = ss.C[0]
    y = np.empty(steps + 1)
    x = np.zeros(n)
    diverged = False
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(steps + 1):
            y[k] = c @ x + ss.D
            if not np.isfinite(y[k]):
                diverged = True
                break
            x = ad @ x + bd

    if diverged:
        log.warning("Step response diverged, trace truncated", t=float(t[k]))
        t, y = t[:k], y[:k]
    return StepResponse(t, y, dt, diverged)
