"""Config files: YAML documents validated against JSON schemas.

Three document kinds exist: a network run (``simulate``), a sweep spec
(``sweep``) and a single-neuron study (``single-neuron``). ``SCHEMAS``
holds the published schemas; ``ringstar schema KIND`` prints them.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, fields
from importlib import resources
from pathlib import Path

import jsonschema
import yaml

from .entropy import SampEnConfig
from .errors import ConfigError
from .network import LINK_MODES, RING_SIGNS, STAR_SIGNS, NetworkConfig
from .neuron import NeuronParams, NeuronState
from .sweep import SWEEPABLE, SweepAxis, SweepSpec

_number = {"type": "number"}
_count = {"type": "integer", "minimum": 1}

NEURON_SCHEMA = {
    "type": "object",
    "properties": {f.name: _number for f in fields(NeuronParams)},
    "additionalProperties": False,
}

SAMPEN_SCHEMA = {
    "type": "object",
    "properties": {
        "emb_dim": _count,
        "tolerance": {"type": ["number", "null"], "exclusiveMinimum": 0},
        "rel_tolerance": {"type": "number", "exclusiveMinimum": 0},
        "closed": {"type": "boolean"},
    },
    "additionalProperties": False,
}

NETWORK_SCHEMA = {
    "type": "object",
    "required": ["n_nodes", "r_neighbors", "sigma0", "mu0", "p_sigma", "p_mu"],
    "properties": {
        "n_nodes": {"type": "integer", "minimum": 3},
        "r_neighbors": _count,
        "sigma0": _number,
        "mu0": _number,
        "d_sigma": {"type": "number", "minimum": 0},
        "d_mu": {"type": "number", "minimum": 0},
        "p_sigma": {"type": "number", "minimum": 0, "maximum": 1},
        "p_mu": {"type": "number", "minimum": 0, "maximum": 1},
        "noise_lo": _number,
        "noise_hi": _number,
        "n_total": _count,
        "n_transient": {"type": "integer", "minimum": 0},
        "seed": {"type": "integer", "minimum": 0},
        "neuron": NEURON_SCHEMA,
        "link_mode": {"enum": list(LINK_MODES)},
        "star_sign": {"enum": list(STAR_SIGNS)},
        "ring_sign": {"enum": list(RING_SIGNS)},
        "guard": {"type": "number", "exclusiveMinimum": 0},
        "paper_mode": {"type": "boolean"},
        "description": {"type": "string"},
    },
    "additionalProperties": False,
}

AXIS_SCHEMA = {
    "type": "object",
    "required": ["name", "lo", "hi", "count"],
    "properties": {
        "name": {"enum": list(SWEEPABLE)},
        "lo": _number,
        "hi": _number,
        "count": {"type": "integer", "minimum": 2},
    },
    "additionalProperties": False,
}

SWEEP_SCHEMA = {
    "type": "object",
    "required": ["axis1", "base"],
    "properties": {
        "axis1": AXIS_SCHEMA,
        "axis2": {"oneOf": [AXIS_SCHEMA, {"type": "null"}]},
        "samples_per_cell": _count,
        "sampen": SAMPEN_SCHEMA,
        "base": NETWORK_SCHEMA,
        "description": {"type": "string"},
    },
    "additionalProperties": False,
}

STATE_SCHEMA = {
    "type": "object",
    "required": ["x", "y", "phi"],
    "properties": {"x": _number, "y": _number, "phi": _number},
    "additionalProperties": False,
}

SINGLE_SCHEMA = {
    "type": "object",
    "properties": {
        "neuron": NEURON_SCHEMA,
        "initial": STATE_SCHEMA,
        "n_transient": {"type": "integer", "minimum": 0},
        "n_sample": {"type": "integer", "minimum": 1000},
        "sampen": SAMPEN_SCHEMA,
        "seed": {"type": "integer", "minimum": 0},
        "paper_mode": {"type": "boolean"},
        "description": {"type": "string"},
    },
    "additionalProperties": False,
}

SCHEMAS = {"simulate": NETWORK_SCHEMA, "sweep": SWEEP_SCHEMA, "single-neuron": SINGLE_SCHEMA}


@dataclass(frozen=True)
class SingleNeuronConfig:
    neuron: NeuronParams = field(default_factory=NeuronParams)
    initial: NeuronState = NeuronState(0.5, 1.0, 1.0)
    n_transient: int = 10_000
    n_sample: int = 10_000
    sampen: SampEnConfig = field(default_factory=SampEnConfig)
    # single-neuron runs are deterministic; kept for a uniform CLI
    seed: int = 0


def validate_document(doc, kind: str) -> None:
    try:
        jsonschema.validate(doc, SCHEMAS[kind])
    except jsonschema.ValidationError as exc:
        parts = [str(p) for p in exc.absolute_path]
        if exc.validator == "required" and isinstance(exc.instance, dict):
            missing = [f for f in exc.validator_value if f not in exc.instance]
            parts += missing[:1]
            raise ConfigError("required field missing", ".".join(parts)) from None
        if exc.validator == "additionalProperties" and isinstance(exc.instance, dict):
            allowed = set(exc.schema.get("properties", {}))
            extra = sorted(set(exc.instance) - allowed)
            parts += extra[:1]
            raise ConfigError("unknown field", ".".join(parts)) from None
        raise ConfigError(exc.message, ".".join(parts) or None) from None


def _floatify(cls, data: dict) -> dict:
    out = {}
    for f in fields(cls):
        if f.name in data and f.type in ("float", float) and isinstance(data[f.name], int):
            out[f.name] = float(data[f.name])
        elif f.name in data:
            out[f.name] = data[f.name]
    return out


def network_from_dict(doc: dict, validate: bool = True) -> NetworkConfig:
    if validate:
        validate_document(doc, "simulate")
    data = {k: v for k, v in doc.items() if k not in ("neuron", "paper_mode", "description")}
    neuron = NeuronParams(**_floatify(NeuronParams, doc.get("neuron", {})))
    cfg = NetworkConfig(neuron=neuron, **_floatify(NetworkConfig, data))
    cfg.validate(paper_mode=bool(doc.get("paper_mode", False)))
    return cfg


def network_to_dict(cfg: NetworkConfig) -> dict:
    return asdict(cfg)


def sampen_from_dict(doc: dict | None) -> SampEnConfig:
    doc = dict(doc or {})
    if isinstance(doc.get("rel_tolerance"), int):
        doc["rel_tolerance"] = float(doc["rel_tolerance"])
    return SampEnConfig(**doc)


def sweep_from_dict(doc: dict) -> SweepSpec:
    validate_document(doc, "sweep")
    axis2 = doc.get("axis2")
    spec = SweepSpec(
        axis1=SweepAxis(**_floatify(SweepAxis, doc["axis1"])),
        axis2=SweepAxis(**_floatify(SweepAxis, axis2)) if axis2 else None,
        base=network_from_dict(doc["base"], validate=False),
        samples_per_cell=doc.get("samples_per_cell", 1),
        sampen=sampen_from_dict(doc.get("sampen")),
    )
    spec.validate()
    return spec


def sweep_to_dict(spec: SweepSpec) -> dict:
    return {
        "axis1": asdict(spec.axis1),
        "axis2": asdict(spec.axis2) if spec.axis2 else None,
        "samples_per_cell": spec.samples_per_cell,
        "sampen": asdict(spec.sampen),
        "base": network_to_dict(spec.base),
    }


def single_from_dict(doc: dict) -> SingleNeuronConfig:
    validate_document(doc, "single-neuron")
    neuron = NeuronParams(**_floatify(NeuronParams, doc.get("neuron", {})))
    neuron.validate(paper_mode=bool(doc.get("paper_mode", False)))
    init = doc.get("initial")
    cfg = SingleNeuronConfig(
        neuron=neuron,
        initial=NeuronState(*(float(init[k]) for k in ("x", "y", "phi"))) if init else NeuronState(0.5, 1.0, 1.0),
        n_transient=doc.get("n_transient", 10_000),
        n_sample=doc.get("n_sample", 10_000),
        sampen=sampen_from_dict(doc.get("sampen")),
        seed=doc.get("seed", 0),
    )
    for name, value in asdict(cfg.initial).items():
        if not math.isfinite(value):
            raise ConfigError("must be finite", f"initial.{name}")
    return cfg


def single_to_dict(cfg: SingleNeuronConfig) -> dict:
    return asdict(cfg)


LOADERS = {"simulate": network_from_dict, "sweep": sweep_from_dict, "single-neuron": single_from_dict}
DUMPERS = {"simulate": network_to_dict, "sweep": sweep_to_dict, "single-neuron": single_to_dict}


def preset_names() -> list[str]:
    root = resources.files("ringstar") / "presets"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".yaml"))


def read_document(path_or_preset: str | Path) -> dict:
    """Load YAML from a path, or from a bundled preset name such as ``fig3b``."""
    path = Path(path_or_preset)
    if path.exists():
        text = path.read_text()
    else:
        res = resources.files("ringstar") / "presets" / f"{path_or_preset}.yaml"
        if not res.is_file():
            raise ConfigError(f"no such config file or preset: {path_or_preset}")
        text = res.read_text()
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"not valid YAML: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError("config must be a mapping")
    return doc


def load(path_or_preset, kind: str):
    return LOADERS[kind](read_document(path_or_preset))


def dump(obj, kind: str) -> str:
    return yaml.safe_dump(DUMPERS[kind](obj), sort_keys=False)


def save(obj, kind: str, path: str | Path) -> None:
    Path(path).write_text(dump(obj, kind))
