from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Settings:
    # arrangement
    region_limit: int = 16
    exhaustive_scan_limit: int = 12

    # analytic centers (damped Newton on the log-barrier)
    center_gradient_tol: float = 1e-12
    center_kkt_tol: float = 1e-9
    center_max_iter: int = 200

    # primal-dual Newton at a fixed lambda
    newton_tol: float = 1e-10
    newton_max_iter: int = 50
    fraction_to_boundary: float = 0.99

    # continuation
    max_turn: float = 0.05
    min_log_step: float = 1e-7
    max_log_step: float = 2.302585092994046  # ln 10
    lambda_max_factor: float = 1e8
    lambda_min_factor: float = 1e-10
    lambda_max: float | None = None  # explicit |λ| range; None means factor·scale
    lambda_min: float | None = None
    scaled_switch_factor: float = 1e2
    endpoint_tol: float = 1e-6
    workers: int = 4

    # verification
    verify_tol: float = 1e-8

    # curvature
    curvature_tol: float = 1e-4
    refinement_levels: int = 6
    inflection_noise: float = 1e-14  # floor; the working floor is at least 100·newton_tol

    # plotting
    plot_points: int = 1000

    def override(self, **changes: object) -> "Settings":
        """Copy with the given fields replaced; None values are ignored."""
        kept = {k: v for k, v in changes.items() if v is not None}
        return replace(self, **kept)


DEFAULT_SETTINGS = Settings()
