"""
Damped Newton on the weighted log-barrier of one region:

    maximize  ν·cᵀx + Σ log(σ_i·x_i)   subject to  A·x = b

ν = 0 gives the analytic center. For ν ≠ 0 the maximiser is the central
path point at λ = 1/ν. Iterates move inside {A·x = b} through an
orthonormal kernel basis N, so only the reduced gradient and Hessian are
formed.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from centralcurve.core.config import DEFAULT_SETTINGS, Settings
from centralcurve.core.errors import NewtonDivergence
from centralcurve.core.types import SignVector, format_signs

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BarrierResult:
    x: np.ndarray
    iterations: int
    kkt_residual: float


def kernel_frame(A: np.ndarray) -> np.ndarray:
    """Orthonormal columns spanning ker A."""
    return linalg.null_space(A)


def kkt_residual(frame: np.ndarray, x: np.ndarray, c: np.ndarray | None = None, nu: float = 0.0) -> float:
    """Relative part of ν·c + x⁻¹ outside the row space of A."""
    inv = 1.0 / x
    grad = inv if c is None or nu == 0.0 else nu * c + inv
    if frame.shape[1] == 0:
        return 0.0
    return float(np.linalg.norm(frame.T @ grad) / np.linalg.norm(inv))


class BarrierNewton:
    # steps are damped to 1/(1+δ) while the Newton decrement δ is at least this
    damping_threshold: float = 0.25
    # a full step with a decrement this small leaves the iterate at round-off distance
    stall_decrement: float = 1e-13

    def __init__(
        self,
        A: np.ndarray,
        sign: SignVector,
        c: np.ndarray | None = None,
        nu: float = 0.0,
        settings: Settings = DEFAULT_SETTINGS,
        frame: np.ndarray | None = None,
    ) -> None:
        self.sign = np.asarray(sign, dtype=float)
        self.c = np.zeros(A.shape[1]) if c is None else np.asarray(c, dtype=float)
        self.nu = nu
        self.settings = settings
        self.frame = kernel_frame(A) if frame is None else frame

    def _inside(self, x: np.ndarray) -> bool:
        return bool(np.all(self.sign * x > 0))

    def _solve(self, x0: np.ndarray, always_damp: bool) -> BarrierResult | None:
        N = self.frame
        x = np.array(x0, dtype=float)
        for it in range(1, self.settings.center_max_iter + 1):
            inv = 1.0 / x
            grad = N.T @ (self.nu * self.c + inv)
            if np.linalg.norm(grad) <= self.settings.center_gradient_tol * np.linalg.norm(inv):
                return BarrierResult(x, it, kkt_residual(N, x, self.c, self.nu))
            hess = N.T @ (N * (inv ** 2)[:, None])
            dz = linalg.solve(hess, grad, assume_a="pos")
            delta = float(np.sqrt(max(grad @ dz, 0.0)))
            step = 1.0 / (1.0 + delta) if always_damp or delta >= self.damping_threshold else 1.0
            dx = N @ dz
            while not self._inside(x + step * dx):
                step *= 0.5
                if step < 1e-16:
                    return None
            x = x + step * dx
            logger.debug("barrier iteration %d: decrement %.3e, step %.3e", it, delta, step)
            if delta < self.stall_decrement:
                return BarrierResult(x, it, kkt_residual(N, x, self.c, self.nu))
        return None

    def solve(self, x0: np.ndarray) -> BarrierResult:
        if self.frame.shape[1] == 0:
            return BarrierResult(np.array(x0, dtype=float), 0, 0.0)
        if not self._inside(x0):
            raise NewtonDivergence("Start point is not inside the region", sign=format_signs(self.sign))
        result = self._solve(x0, always_damp=False)
        if result is None:
            logger.debug("region %s: retrying with damped steps only", format_signs(self.sign))
            result = self._solve(x0, always_damp=True)
        if result is None:
            lam = 1.0 / self.nu if self.nu else None
            raise NewtonDivergence("Barrier Newton did not converge", sign=format_signs(self.sign), lam=lam)
        return result


# ----------------------------- Public API ---------------------------------

def analytic_center(
    A: np.ndarray,
    sign: SignVector,
    start: np.ndarray,
    settings: Settings = DEFAULT_SETTINGS,
) -> BarrierResult:
    result = BarrierNewton(A, sign, settings=settings).solve(start)
    if result.kkt_residual > settings.center_kkt_tol:
        raise NewtonDivergence(
            f"Analytic center KKT residual {result.kkt_residual:.3e} above tolerance", sign=format_signs(sign)
        )
    return result


def barrier_point(
    A: np.ndarray,
    c: np.ndarray,
    sign: SignVector,
    lam: float,
    start: np.ndarray,
    settings: Settings = DEFAULT_SETTINGS,
    frame: np.ndarray | None = None,
) -> BarrierResult:
    """Central path point at λ (either sign) by barrier Newton with ν = 1/λ."""
    return BarrierNewton(A, sign, c=c, nu=1.0 / lam, settings=settings, frame=frame).solve(start)
