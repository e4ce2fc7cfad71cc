from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional


@dataclass(frozen=True)
class RunConfig:
    """Hyper-parameters for one decomposition run.

    Defaults are the recommended operating point: alpha 0.5, MinSamples 2 and a
    MaxEpsilon of 0.7, scanned in steps of 0.05.
    """

    alpha: float = 0.5
    max_epsilon: float = 0.7
    step: float = 0.05
    min_samples: int = 2
    stopwords: Optional[Path] = None

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")
        if not 0.0 <= self.max_epsilon <= 1.0:
            raise ValueError(f"max_epsilon must be in [0, 1], got {self.max_epsilon}")
        if not self.step > 0.0:
            raise ValueError(f"step must be positive, got {self.step}")
        if int(self.min_samples) != self.min_samples or self.min_samples < 1:
            raise ValueError(f"min_samples must be an integer >= 1, got {self.min_samples}")
