from __future__ import annotations

from dataclasses import dataclass

from .interp import Mode


@dataclass(frozen=True)
class RunConfig:
    """Tolerances and probe ladders shared by the verifier, the solver and the CLI.

    ``steps`` sets the ladder for limits (values, quotients, vanishing
    checks).  Differential fits start on the shorter ``fit_steps`` ladder and
    may extend it by up to ``fit_extra_steps`` halvings when a strongly curved
    function has not yet shown its residual decay.
    """

    tol_value: float = 1e-6
    tol_slope: float = 1e-4
    t0: float = 0.1
    ratio: float = 0.5
    steps: int = 25
    seed: int = 42
    apertures: tuple[float, ...] = (1.0, 2.0, 4.0)
    mode: Mode = Mode.STRICT
    fit_steps: int = 18
    fit_extra_steps: int = 8
    samples_per_scale: int = 16
    tol_spread: float = 1e-8
    tol_limit: float = 1e-6
    vanish_tol: float = 1e-3

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "apertures", tuple(float(a) for a in self.apertures))
        for name in ("tol_value", "tol_slope", "tol_spread", "tol_limit", "vanish_tol", "t0"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if not 0 < self.ratio < 1:
            raise ValueError("ratio must lie in (0, 1)")
        if self.fit_extra_steps < 0:
            raise ValueError("fit_extra_steps must be >= 0")
        if self.steps < 4 or self.fit_steps < 4:
            raise ValueError("ladders need at least 4 steps")
        if not self.apertures or any(a < 1 for a in self.apertures):
            raise ValueError("apertures must be >= 1")

    def to_dict(self) -> dict:
        return {
            "tol_value": self.tol_value, "tol_slope": self.tol_slope, "t0": self.t0,
            "ratio": self.ratio, "steps": self.steps, "seed": self.seed,
            "apertures": list(self.apertures), "mode": self.mode.value,
            "fit_steps": self.fit_steps, "fit_extra_steps": self.fit_extra_steps,
            "samples_per_scale": self.samples_per_scale,
            "tol_spread": self.tol_spread, "tol_limit": self.tol_limit,
            "vanish_tol": self.vanish_tol,
        }
