from __future__ import annotations

import math
from collections.abc import Callable
from typing import NamedTuple

# Callback receives (chunks_done, total_chunks)
ProgressCallback = Callable[[int, int], None]


class ComplexTime(NamedTuple):
    re: float  # In-plane precession time (Buttiker's tau_y)
    im: float  # Tilt time (Buttiker's tau_z)
    modulus: float  # |tau_bar| (Buttiker's tau_x)

    @classmethod
    def from_complex(cls, value: complex) -> ComplexTime:
        value = complex(value)
        re, im = value.real, value.imag
        return cls(re, im, math.sqrt(re * re + im * im))

    @property
    def modulus_squared(self) -> float:
        return self.re * self.re + self.im * self.im

    def as_complex(self) -> complex:
        return complex(self.re, self.im)


class LambdaAmplitude(NamedTuple):
    lam: float  # Potential shift added over the barrier region
    value: complex  # Transmitted amplitude at the detection point


class ClockReadout(NamedTuple):
    delta_phi: float  # Precession angle in the xy-plane (rad)
    delta_theta: float  # Tilt out of the xy-plane (rad)
    omega_L: float | None
    tau_inferred: ComplexTime | None  # (delta_phi, delta_theta) / omega_L
