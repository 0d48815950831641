"""Physical parameters of the junction Hamiltonian."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class ModelParams:
    """Capacitance C, offset charge q, Josephson coupling alpha, phase Phi.

    The charging term carries the factor 1/(2C); bare (n + q)^2 tables
    correspond to 2C = 1.
    """

    C: float = 1.0
    q: float = 0.0
    alpha: float = 1.0
    phi: float = 0.0

    def __post_init__(self):
        for name in ("C", "q", "alpha", "phi"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise ValueError(f"{name} must be a finite real number, got {v!r}")
            object.__setattr__(self, name, float(v))
        if self.C <= 0:
            raise ValueError(f"capacitance C must be positive, got {self.C}")

    def with_phi(self, phi: float) -> "ModelParams":
        return replace(self, phi=phi)

    def with_q(self, q: float) -> "ModelParams":
        return replace(self, q=q)
