"""Scenario configuration: one JSON object per run.

``validate_config`` checks structure and physics in one pass, collecting every
issue with its dotted field path, and returns a ``ScenarioConfig`` with all
defaults filled in. ``ScenarioConfig.to_dict`` is the normalised echo that
goes into every output header.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Literal

import numpy as np

from .clock.spin import SpinState
from .duration.inversion import Taper
from .duration.scan import default_Lambda, lambda_grid
from .errors import ConfigIssue, ConfigValidationError, InvalidInputError, TauClockError
from .interferometer import TwoPathConfig
from .lattice.spec import LatticeSpec, random_hop, tight_binding_hop
from .scattering.barrier import BarrierSpec
from .wavepacket import WavePacket, make_gaussian_packet

ScenarioKind = Literal['taudist', 'clock', 'interferometer', 'oracle']

SECTIONS: dict[str, tuple[tuple[str, ...], tuple[str, ...]]] = {
    # kind: (required sections, optional sections)
    'taudist': (('packet', 'barrier', 'detection'), ('lambda_grid',)),
    'clock': (('packet', 'barrier', 'detection', 'clock'), ('lambda_grid',)),
    'interferometer': (('interferometer',), ()),
    'oracle': (('lattice',), ()),
}
TOP_LEVEL = ('kind', 'id', 'output')

# (polar, azimuth) of the named spin-coherent probes
PRESET_PROBES: dict[str, tuple[float, float]] = {
    'up_x': (math.pi / 2, 0.0),
    'down_x': (math.pi / 2, math.pi),
    'up_y': (math.pi / 2, math.pi / 2),
    'down_y': (math.pi / 2, -math.pi / 2),
    'up_z': (0.0, 0.0),
    'down_z': (math.pi, 0.0),
}

_MISSING = object()


# ---------------------------------------------------------------------------
# Sections
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PacketConfig:
    p0: float
    dp: float
    x_c: float
    mu: float = 1.0
    n_points: int = 512
    span: float = 6.0

    def build(self) -> WavePacket:
        return make_gaussian_packet(self.p0, self.dp, self.x_c, self.mu, self.n_points, self.span)


@dataclass(frozen=True)
class BarrierConfig:
    V: float
    d: float
    segments: tuple[tuple[float, float], ...] | None = None

    def build(self) -> BarrierSpec:
        return BarrierSpec(self.V, self.d, self.segments)


@dataclass(frozen=True)
class DetectionConfig:
    x: float
    T_total: float


@dataclass(frozen=True)
class LambdaGridConfig:
    Lambda: float
    n_lambda: int = 4096
    taper: str = 'raised-cosine'
    taper_fraction: float = 0.1
    center: float = 0.0

    def build_taper(self) -> Taper:
        return Taper(self.taper, self.taper_fraction)  # type: ignore[arg-type]


@dataclass(frozen=True)
class ProbeConfig:
    name: str
    polar: float | None = None
    azimuth: float | None = None
    components: tuple[complex, ...] | None = None

    def state(self, j: float) -> SpinState:
        if self.components is not None:
            return SpinState.from_components(j, list(self.components))
        return SpinState.coherent(j, self.polar or 0.0, self.azimuth or 0.0)

    @classmethod
    def preset(cls, name: str) -> ProbeConfig:
        polar, azimuth = PRESET_PROBES[name]
        return cls(name, polar, azimuth)


@dataclass(frozen=True)
class ClockConfig:
    omega_L: tuple[float, ...]
    j: float = 0.5
    gamma: ProbeConfig = field(default_factory=lambda: ProbeConfig.preset('up_x'))
    probes: tuple[ProbeConfig, ...] = field(
        default_factory=lambda: (ProbeConfig.preset('up_x'), ProbeConfig.preset('down_x'))
    )


@dataclass(frozen=True)
class InterferometerConfig:
    G1: complex
    G2: complex
    tau1: float
    tau2: float
    omega_L: float
    T_total: float
    n_phi: int = 64

    def build(self) -> TwoPathConfig:
        return TwoPathConfig(self.G1, self.G2, self.tau1, self.tau2, self.omega_L, self.T_total)


@dataclass(frozen=True)
class LatticeConfig:
    n_sites: int
    region: tuple[int, ...]
    hop: dict[str, Any]  # {'kind': 'matrix' | 'tight-binding' | 'random', ...}
    n_steps: int
    dt: float
    start: int
    end: int

    def build(self) -> LatticeSpec:
        match self.hop['kind']:
            case 'tight-binding':
                matrix = tight_binding_hop(self.n_sites, self.hop['theta'])
            case 'random':
                matrix = random_hop(self.n_sites, self.hop['seed'])
            case _:
                matrix = np.array([[complex(*entry) for entry in row] for row in self.hop['matrix']])
        return LatticeSpec(self.n_sites, self.region, matrix, self.n_steps, self.dt, self.start, self.end)


@dataclass(frozen=True)
class OutputConfig:
    prefix: str


@dataclass(frozen=True)
class ScenarioConfig:
    kind: ScenarioKind
    id: str
    output: OutputConfig
    packet: PacketConfig | None = None
    barrier: BarrierConfig | None = None
    detection: DetectionConfig | None = None
    lambda_grid: LambdaGridConfig | None = None
    clock: ClockConfig | None = None
    interferometer: InterferometerConfig | None = None
    lattice: LatticeConfig | None = None

    def to_dict(self) -> dict[str, Any]:
        """Normalised config with every default present; complex numbers as [re, im]."""
        echo: dict[str, Any] = {'kind': self.kind, 'id': self.id}
        for name in (*SECTIONS[self.kind][0], *SECTIONS[self.kind][1]):
            section = getattr(self, name)
            if section is not None:
                echo[name] = _plain(section)
        echo['output'] = _plain(self.output)
        return echo

    def with_prefix(self, prefix: str) -> ScenarioConfig:
        return replace(self, output=OutputConfig(prefix))


def _plain(value: Any) -> Any:
    match value:
        case complex():
            return [value.real, value.imag]
        case ProbeConfig() if value.components is not None:
            return {'name': value.name, 'components': _plain(value.components)}
        case ProbeConfig():
            return {'name': value.name, 'polar': value.polar, 'azimuth': value.azimuth}
        case tuple() | list():
            return [_plain(item) for item in value]
        case dict():
            return {key: _plain(item) for key, item in value.items()}
        case _ if hasattr(value, '__dataclass_fields__'):
            return {name: _plain(getattr(value, name)) for name in value.__dataclass_fields__}
        case _:
            return value


# ---------------------------------------------------------------------------
# Field readers
# ---------------------------------------------------------------------------


class _Section:
    """Typed access to one raw section; problems are recorded, not raised."""

    def __init__(self, raw: dict[str, Any], path: str, issues: list[ConfigIssue]) -> None:
        self.raw = raw
        self.path = path
        self.issues = issues
        self.ok = True

    def issue(self, key: str | None, message: str) -> None:
        self.issues.append(ConfigIssue(f'{self.path}.{key}' if key else self.path, message))
        self.ok = False

    def check_keys(self, allowed: tuple[str, ...]) -> None:
        for key in self.raw:
            if key not in allowed:
                self.issue(key, 'unknown field')

    def _get(self, key: str, default: Any) -> Any:
        if key in self.raw:
            return self.raw[key]
        if default is _MISSING:
            self.issue(key, 'required field is missing')
        return default

    def number(
        self,
        key: str,
        default: Any = _MISSING,
        *,
        positive: bool = False,
        non_negative: bool = False,
    ) -> float:
        value = self._get(key, default)
        if value is _MISSING or value is None:
            return math.nan
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
            self.issue(key, f'expected a finite number, got {value!r}')
            return math.nan
        if positive and not value > 0:
            self.issue(key, f'must be positive, got {value}')
        elif non_negative and value < 0:
            self.issue(key, f'must be non-negative, got {value}')
        return float(value)

    def integer(self, key: str, default: Any = _MISSING, *, minimum: int | None = None) -> int:
        value = self._get(key, default)
        if value is _MISSING:
            return 0
        if isinstance(value, bool) or not isinstance(value, int):
            self.issue(key, f'expected an integer, got {value!r}')
            return 0
        if minimum is not None and value < minimum:
            self.issue(key, f'must be at least {minimum}, got {value}')
        return value

    def complex_number(self, key: str, value: Any = _MISSING) -> complex:
        if value is _MISSING:
            value = self._get(key, _MISSING)
            if value is _MISSING:
                return complex(math.nan)
        return _parse_complex(value, lambda message: self.issue(key, message))

    def string(self, key: str, default: Any = _MISSING, *, choices: tuple[str, ...] = ()) -> str:
        value = self._get(key, default)
        if value is _MISSING:
            return ''
        if not isinstance(value, str):
            self.issue(key, f'expected a string, got {value!r}')
            return ''
        if choices and value not in choices:
            self.issue(key, f'must be one of {", ".join(choices)}; got {value!r}')
        return value

    def sub(self, key: str) -> _Section | None:
        value = self.raw.get(key)
        if not isinstance(value, dict):
            self.issue(key, 'expected an object')
            return None
        return _Section(value, f'{self.path}.{key}', self.issues)


def _parse_complex(value: Any, report: Any) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(part, (int, float)) and not isinstance(part, bool) for part in value)
    ):
        return complex(value[0], value[1])
    report(f'expected a number or [re, im], got {value!r}')
    return complex(math.nan)


def _attempt(issues: list[ConfigIssue], fallback: str, build: Any) -> Any:
    """Run a domain constructor, turning its error into an issue."""
    try:
        return build()
    except TauClockError as error:
        issues.append(ConfigIssue(error.field or fallback, error.message))
        return None


# ---------------------------------------------------------------------------
# Section parsers
# ---------------------------------------------------------------------------


def _packet(section: _Section) -> PacketConfig:
    section.check_keys(('p0', 'dp', 'x_c', 'mu', 'n_points', 'span'))
    return PacketConfig(
        p0=section.number('p0', positive=True),
        dp=section.number('dp', positive=True),
        x_c=section.number('x_c'),
        mu=section.number('mu', 1.0, positive=True),
        n_points=section.integer('n_points', 512, minimum=16),
        span=section.number('span', 6.0),
    )


def _barrier(section: _Section) -> BarrierConfig:
    section.check_keys(('V', 'd', 'segments'))
    raw_segments = section.raw.get('segments')
    segments = None
    if raw_segments is not None:
        if not isinstance(raw_segments, list) or not all(
            isinstance(item, list)
            and len(item) == 2
            and all(isinstance(part, (int, float)) and not isinstance(part, bool) for part in item)
            for item in raw_segments
        ):
            section.issue('segments', 'expected a list of [width, height] pairs')
        else:
            segments = tuple((float(width), float(height)) for width, height in raw_segments)
    return BarrierConfig(
        V=section.number('V', 0.0 if segments else _MISSING),
        d=section.number('d', positive=True),
        segments=segments,
    )


def _detection(section: _Section) -> DetectionConfig:
    section.check_keys(('x', 'T_total'))
    return DetectionConfig(x=section.number('x'), T_total=section.number('T_total', positive=True))


def _lambda_grid(section: _Section, T_total: float) -> LambdaGridConfig:
    section.check_keys(('Lambda', 'n_lambda', 'taper', 'taper_fraction', 'center'))
    Lambda = section.number('Lambda', None, positive=True)
    if math.isnan(Lambda):
        Lambda = default_Lambda(T_total) if T_total > 0 else math.nan
    return LambdaGridConfig(
        Lambda=Lambda,
        n_lambda=section.integer('n_lambda', 4096),
        taper=section.string('taper', 'raised-cosine', choices=('none', 'raised-cosine')),
        taper_fraction=section.number('taper_fraction', 0.1, positive=True),
        center=section.number('center', 0.0),
    )


def _probe(raw: Any, path: str, issues: list[ConfigIssue]) -> ProbeConfig | None:
    if isinstance(raw, str):
        if raw not in PRESET_PROBES:
            issues.append(ConfigIssue(path, f'unknown probe {raw!r}; presets are {", ".join(PRESET_PROBES)}'))
            return None
        return ProbeConfig.preset(raw)
    if not isinstance(raw, dict):
        issues.append(ConfigIssue(path, 'expected a preset name or an object'))
        return None
    section = _Section(raw, path, issues)
    section.check_keys(('name', 'polar', 'azimuth', 'components'))
    name = section.string('name', path.rsplit('.', 1)[-1])
    if 'components' in raw:
        components = raw['components']
        if not isinstance(components, list) or not components:
            section.issue('components', 'expected a non-empty list of amplitudes')
            return None
        parsed = tuple(section.complex_number('components', item) for item in components)
        return ProbeConfig(name, components=parsed) if section.ok else None
    probe = ProbeConfig(name, section.number('polar'), section.number('azimuth', 0.0))
    return probe if section.ok else None


def _clock(section: _Section) -> ClockConfig | None:
    section.check_keys(('j', 'omega_L', 'gamma', 'probes'))
    j = section.number('j', 0.5, positive=True)
    raw_omegas = section.raw.get('omega_L')
    omegas: tuple[float, ...] = ()
    if isinstance(raw_omegas, (int, float)) and not isinstance(raw_omegas, bool):
        omegas = (float(raw_omegas),)
    elif isinstance(raw_omegas, list) and raw_omegas and all(
        isinstance(value, (int, float)) and not isinstance(value, bool) for value in raw_omegas
    ):
        omegas = tuple(float(value) for value in raw_omegas)
    else:
        section.issue('omega_L', 'expected a number or a non-empty list of numbers')

    issues = section.issues
    gamma = _probe(section.raw.get('gamma', 'up_x'), f'{section.path}.gamma', issues)
    raw_probes = section.raw.get('probes', ['up_x', 'down_x'])
    if not isinstance(raw_probes, list) or not raw_probes:
        section.issue('probes', 'expected a non-empty list of probes')
        raw_probes = []
    probes = [_probe(raw, f'{section.path}.probes[{i}]', issues) for i, raw in enumerate(raw_probes)]
    if not section.ok or gamma is None or None in probes:
        return None

    if _attempt(issues, f'{section.path}.j', lambda: SpinState.basis(j, j)) is None:
        return None
    config = ClockConfig(omegas, j, gamma, tuple(p for p in probes if p is not None))
    for name, probe in [('gamma', config.gamma), *((f'probes[{i}]', p) for i, p in enumerate(config.probes))]:
        state = _attempt(issues, f'{section.path}.{name}', lambda probe=probe: probe.state(j))
        if state is not None and not state.is_normalized:
            issues.append(ConfigIssue(f'{section.path}.{name}', 'probe state must be normalised'))
    return config


def _interferometer(section: _Section) -> InterferometerConfig:
    section.check_keys(('G1', 'G2', 'tau1', 'tau2', 'omega_L', 'T_total', 'n_phi'))
    return InterferometerConfig(
        G1=section.complex_number('G1'),
        G2=section.complex_number('G2'),
        tau1=section.number('tau1', non_negative=True),
        tau2=section.number('tau2', non_negative=True),
        omega_L=section.number('omega_L'),
        T_total=section.number('T_total', positive=True),
        n_phi=section.integer('n_phi', 64, minimum=1),
    )


def _hop(section: _Section) -> dict[str, Any]:
    raw = section.raw.get('hop')
    path = 'hop'
    if not isinstance(raw, dict):
        section.issue(path, 'expected an object with a "kind"')
        return {'kind': 'matrix', 'matrix': []}
    hop = _Section(raw, f'{section.path}.hop', section.issues)
    kind = hop.string('kind', choices=('matrix', 'tight-binding', 'random'))
    match kind:
        case 'tight-binding':
            hop.check_keys(('kind', 'theta'))
            result: dict[str, Any] = {'kind': kind, 'theta': hop.number('theta')}
        case 'random':
            hop.check_keys(('kind', 'seed'))
            result = {'kind': kind, 'seed': hop.integer('seed', minimum=0)}
        case _:
            hop.check_keys(('kind', 'matrix'))
            rows = raw.get('matrix')
            if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
                hop.issue('matrix', 'expected a list of rows')
                rows = []
            matrix = [[hop.complex_number('matrix', entry) for entry in row] for row in rows]
            result = {'kind': 'matrix', 'matrix': [[[z.real, z.imag] for z in row] for row in matrix]}
    if not hop.ok:
        section.ok = False
    return result


def _lattice(section: _Section) -> LatticeConfig:
    section.check_keys(('n_sites', 'region', 'hop', 'n_steps', 'dt', 'start', 'end'))
    region = section.raw.get('region')
    if not isinstance(region, list) or not all(isinstance(site, int) and not isinstance(site, bool) for site in region):
        section.issue('region', 'expected a list of site indices')
        region = []
    return LatticeConfig(
        n_sites=section.integer('n_sites', minimum=1),
        region=tuple(region),
        hop=_hop(section),
        n_steps=section.integer('n_steps', minimum=0),
        dt=section.number('dt', positive=True),
        start=section.integer('start', minimum=0),
        end=section.integer('end', minimum=0),
    )


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------


def validate_config(raw: Any) -> ScenarioConfig:
    """Validate a raw scenario mapping; raises ConfigValidationError listing every issue."""
    issues: list[ConfigIssue] = []
    if not isinstance(raw, dict):
        raise ConfigValidationError([ConfigIssue('', 'scenario must be a JSON object')])

    kind = raw.get('kind')
    if kind not in SECTIONS:
        issues.append(ConfigIssue('kind', f'must be one of {", ".join(SECTIONS)}; got {kind!r}'))
        raise ConfigValidationError(issues)

    required, optional = SECTIONS[kind]
    for key in raw:
        if key not in (*TOP_LEVEL, *required, *optional):
            issues.append(ConfigIssue(key, f'not used by kind {kind!r}'))
    for key in required:
        if key not in raw:
            issues.append(ConfigIssue(key, f'required for kind {kind!r}'))

    scenario_id = raw.get('id', kind)
    if not isinstance(scenario_id, str) or not scenario_id:
        issues.append(ConfigIssue('id', 'expected a non-empty string'))
        scenario_id = kind

    def section(name: str) -> _Section | None:
        if name not in raw:
            return None
        value = raw[name]
        if not isinstance(value, dict):
            issues.append(ConfigIssue(name, 'expected an object'))
            return None
        return _Section(value, name, issues)

    values: dict[str, Any] = {}
    parsers = {
        'packet': _packet,
        'barrier': _barrier,
        'detection': _detection,
        'clock': _clock,
        'interferometer': _interferometer,
        'lattice': _lattice,
    }
    clean: dict[str, bool] = {}
    for name in (*required, *optional):
        if name == 'lambda_grid':
            continue
        raw_section = section(name)
        if raw_section is not None:
            values[name] = parsers[name](raw_section)
            clean[name] = raw_section.ok and values[name] is not None

    if kind in ('taudist', 'clock'):
        detection = values.get('detection')
        T_total = detection.T_total if detection is not None and clean.get('detection') else math.nan
        grid_section = section('lambda_grid') if 'lambda_grid' in raw else _Section({}, 'lambda_grid', issues)
        if grid_section is not None:
            values['lambda_grid'] = _lambda_grid(grid_section, T_total)
            clean['lambda_grid'] = grid_section.ok and not math.isnan(values['lambda_grid'].Lambda)

    _check_physics(values, clean, issues)

    output = raw.get('output', {})
    prefix = output.get('prefix', scenario_id) if isinstance(output, dict) else None
    if not isinstance(prefix, str) or not prefix:
        issues.append(ConfigIssue('output.prefix', 'expected a non-empty string'))

    if issues:
        raise ConfigValidationError(issues)
    return ScenarioConfig(kind=kind, id=scenario_id, output=OutputConfig(prefix), **values)


def _check_physics(values: dict[str, Any], clean: dict[str, bool], issues: list[ConfigIssue]) -> None:
    """Build the domain objects of every clean section so their own checks run."""
    if clean.get('packet'):
        _attempt(issues, 'packet', values['packet'].build)
    if clean.get('barrier'):
        _attempt(issues, 'barrier', values['barrier'].build)
    if clean.get('lambda_grid'):
        grid = values['lambda_grid']
        _attempt(issues, 'lambda_grid', grid.build_taper)
        _attempt(issues, 'lambda_grid', lambda: lambda_grid(grid.Lambda, grid.n_lambda, grid.center))
    if clean.get('interferometer'):
        _attempt(issues, 'interferometer', values['interferometer'].build)
    if clean.get('lattice'):
        _attempt(issues, 'lattice', values['lattice'].build)


def load_config(path: Path) -> ScenarioConfig:
    try:
        raw = json.loads(path.read_text(encoding='utf-8'))
    except OSError as error:
        raise InvalidInputError(f'Cannot read config {path}: {error.strerror}', field='config') from error
    except json.JSONDecodeError as error:
        raise InvalidInputError(f'Config {path} is not valid JSON: {error.msg} (line {error.lineno})', field='config') from error
    return validate_config(raw)
