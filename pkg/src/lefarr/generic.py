"""Seeded samples standing in for "a general linear form" and "a general point"."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .polyring import LinearForm, normalize_point

DEFAULT_SEED = 20190
DEFAULT_SAMPLES = 3
DEFAULT_BOUND = 100


@dataclass(frozen=True)
class GenericSampler:
    """Deterministic source of random integer linear forms and points.

    Every request carries a label; the stream for a label depends only on
    the seed and the label, so results do not depend on call order.
    """

    seed: int = DEFAULT_SEED
    count: int = DEFAULT_SAMPLES
    bound: int = DEFAULT_BOUND

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("at least one sample is required")
        if self.bound < 1:
            raise ValueError("coefficient bound must be positive")

    def rng(self, label: str) -> random.Random:
        return random.Random(f"{self.seed}/{label}")

    def linear_forms(self, num_vars: int, label: str = "L") -> list[LinearForm]:
        rng = self.rng(f"forms/{num_vars}/{label}")
        out = []
        while len(out) < self.count:
            coeffs = [rng.randint(-self.bound, self.bound) for _ in range(num_vars)]
            if any(coeffs):
                out.append(LinearForm(tuple(coeffs)))
        return out

    def points(self, num_vars: int, label: str = "P", avoid=()) -> list[tuple]:
        """Normalized points with all coordinates nonzero, none in ``avoid``."""
        rng = self.rng(f"points/{num_vars}/{label}")
        avoid = {normalize_point(p) for p in avoid}
        out = []
        while len(out) < self.count:
            coeffs = [rng.choice([-1, 1]) * rng.randint(1, self.bound) for _ in range(num_vars)]
            p = normalize_point(coeffs)
            if p not in avoid and p not in out:
                out.append(p)
        return out
