from typing import Optional

from crtoolkit.errors import InvalidInput


class Settings:
    """Global settings shared by every analyzer.

    Only the numeric oracles and the randomized searches read these values;
    exact computations never depend on them.
    """

    seed: int = 0
    tolerance: float = 1e-9
    inversion_tolerance: float = 1e-12
    cyclic_attempts: int = 64

    @staticmethod
    def init(
        seed: Optional[int] = None,
        tolerance: Optional[float] = None,
        inversion_tolerance: Optional[float] = None,
        cyclic_attempts: Optional[int] = None,
    ) -> None:
        if seed is not None:
            if seed < 0:
                raise InvalidInput(f"Seed must be non-negative :: {seed}")
            Settings.seed = seed
        if tolerance is not None:
            if tolerance <= 0:
                raise InvalidInput(f"Tolerance must be positive :: {tolerance}")
            Settings.tolerance = tolerance
        if inversion_tolerance is not None:
            Settings.inversion_tolerance = inversion_tolerance
        if cyclic_attempts is not None:
            Settings.cyclic_attempts = cyclic_attempts
        return

    @staticmethod
    def reset() -> None:
        Settings.seed = 0
        Settings.tolerance = 1e-9
        Settings.inversion_tolerance = 1e-12
        Settings.cyclic_attempts = 64
