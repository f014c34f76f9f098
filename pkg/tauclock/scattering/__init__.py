from .amplitude import (
    LambdaAmplitudeSource,
    PlaneWaveSource,
    ScatteringSource,
    SyntheticSource,
    lambda_amplitude,
    transmitted_amplitude,
    transmitted_peak,
)
from .barrier import BarrierSpec
from .transmission import (
    ScatteringAmplitudes,
    log_transmission,
    piecewise_scattering,
    piecewise_transmission,
    rect_transmission,
    transmission,
)

__all__ = [
    'BarrierSpec',
    'LambdaAmplitudeSource',
    'PlaneWaveSource',
    'ScatteringAmplitudes',
    'ScatteringSource',
    'SyntheticSource',
    'lambda_amplitude',
    'log_transmission',
    'piecewise_scattering',
    'piecewise_transmission',
    'rect_transmission',
    'transmission',
    'transmitted_amplitude',
    'transmitted_peak',
]
