from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import InvalidParameterError

Layer = tuple[float, float]  # (width, height)


@dataclass(frozen=True)
class BarrierSpec:
    """Piecewise-constant potential occupying [0, d].

    ``segments`` lists (width, height) layers from left to right. When it is
    omitted the barrier is a single rectangle of height ``V``.
    """

    V: float
    d: float
    segments: tuple[Layer, ...] | None = None

    def __post_init__(self) -> None:
        if not self.d > 0:
            raise InvalidParameterError(f'Barrier width must be positive, got {self.d}', field='barrier.d')
        if self.segments is None:
            return
        if not self.segments:
            raise InvalidParameterError('Segment list is empty', field='barrier.segments')
        for i, (width, _height) in enumerate(self.segments):
            if not width > 0:
                raise InvalidParameterError(
                    f'Segment width must be positive, got {width}', field=f'barrier.segments[{i}]'
                )
        total = math.fsum(width for width, _ in self.segments)
        if not math.isclose(total, self.d, rel_tol=1e-12):
            raise InvalidParameterError(
                f'Segment widths sum to {total}, expected d={self.d}', field='barrier.segments'
            )

    @classmethod
    def free(cls, d: float) -> BarrierSpec:
        return cls(V=0.0, d=d)

    @property
    def layers(self) -> tuple[Layer, ...]:
        if self.segments is None:
            return ((self.d, self.V),)
        return self.segments

    @property
    def is_rectangular(self) -> bool:
        return len(self.layers) == 1

    @property
    def min_height(self) -> float:
        return min(height for _, height in self.layers)

    def shifted(self, lam: float) -> BarrierSpec:
        """Composite potential V(x) + lam over the whole region."""
        if self.segments is None:
            return BarrierSpec(V=self.V + lam, d=self.d)
        return BarrierSpec(
            V=self.V + lam,
            d=self.d,
            segments=tuple((width, height + lam) for width, height in self.segments),
        )
