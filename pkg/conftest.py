import json
from pathlib import Path
from typing import NamedTuple

import pytest

from tauclock.config import load_config
from tauclock.duration import LambdaScan, TauAmplitudeDistribution, invert_to_tau, scan_source
from tauclock.scattering import BarrierSpec, ScatteringSource, SyntheticSource
from tauclock.wavepacket import make_gaussian_packet

SCENARIOS_DIR = Path(__file__).parent / 'scenarios'


class ScenarioCase(NamedTuple):
    source: ScatteringSource
    scan: LambdaScan
    dist: TauAmplitudeDistribution


@pytest.fixture
def scenarios_dir():
    return SCENARIOS_DIR


@pytest.fixture(scope='session')
def opaque_case():
    """The shipped taudist_opaque scenario, scanned and inverted once per session."""
    config = load_config(SCENARIOS_DIR / 'taudist_opaque.json')
    detection, grid = config.detection, config.lambda_grid
    source = ScatteringSource(config.packet.build(), config.barrier.build(), detection.x, detection.T_total)
    scan = scan_source(source, grid.Lambda, grid.n_lambda, center=grid.center)
    return ScenarioCase(source, scan, invert_to_tau(scan, detection.T_total, grid.build_taper()))


@pytest.fixture
def opaque_packet():
    return make_gaussian_packet(p0=1.0, dp=0.05, x_c=-20.0)


@pytest.fixture
def opaque_barrier():
    return BarrierSpec(V=2.0, d=5.0)


@pytest.fixture
def two_durations():
    """A(lam) = e^{-2 i lam} + 0.5i e^{-5 i lam}; tau_bar = 2.6 + 1.2i."""
    return SyntheticSource.of([1.0, 0.5j], [2.0, 5.0])


@pytest.fixture
def write_scenario(tmp_path):
    def _write(raw, filename='scenario.json'):
        path = tmp_path / filename
        path.write_text(json.dumps(raw))
        return path

    return _write


@pytest.fixture
def taudist_raw():
    return {
        'kind': 'taudist',
        'id': 'minimal',
        'packet': {'p0': 1.0, 'dp': 0.05, 'x_c': -20.0},
        'barrier': {'V': 2.0, 'd': 5.0},
        'detection': {'x': 30.0, 'T_total': 60.0},
    }
