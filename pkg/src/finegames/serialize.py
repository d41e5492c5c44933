"""Wire formats: deterministic JSON, descriptor parsing, markdown.

JSON output is byte-deterministic: fixed insertion-order keys, floats
rendered with 17 significant digits, two-space indentation. Input
descriptors are validated by hand so that errors carry a field path.
"""

from __future__ import annotations

import json
from importlib import resources

import numpy as np

from .errors import ParamError
from .fine import BellReport, JointDistribution, XiInterval
from .games import PayoffTable, PdParams, StrategyTriple, coop_game, pd3
from .measurement import MarginalConvention, MarginalSet, WeightInversion
from .equilibrium import CoalitionReduction, CoalitionValue, NeCertificate
from .qstates import (
    DiagonalMixedState,
    ProductStateAngles,
    PureState,
    density_from_mixed,
    density_from_pure,
    DensityMatrix,
    ghz,
    pd_state,
    product_state,
    w_state,
)

STATE_KINDS = ("pure", "mixed", "product", "ghz", "w", "pd")
GAME_KINDS = ("pd3", "coop", "custom")


def format_float(x: float) -> str:
    """17-significant-digit decimal rendering used everywhere on the wire."""
    if not np.isfinite(x):
        raise ValueError(f"cannot render non-finite value {x!r}")
    return format(float(x), ".17g")


def render_json(value) -> str:
    """Deterministic pretty JSON with a trailing newline."""
    return _render(value, 0) + "\n"


def _render(value, level: int) -> str:
    pad = "  " * level
    if value is None:
        return "null"
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(float(value))
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, (list, tuple, np.ndarray)):
        items = [_render(v, level + 1) for v in value]
        if not items:
            return "[]"
        body = ",\n".join("  " * (level + 1) + item for item in items)
        return "[\n" + body + "\n" + pad + "]"
    if isinstance(value, dict):
        if not value:
            return "{}"
        parts = []
        for key, val in value.items():
            parts.append(
                "  " * (level + 1) + json.dumps(str(key)) + ": " + _render(val, level + 1)
            )
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    raise TypeError(f"cannot render {type(value).__name__} as JSON")


def _ensure_dict(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise ParamError(f"{path}: expected an object")
    return value


def _reject_unknown(d: dict, path: str, allowed: tuple[str, ...]):
    unknown = sorted(set(d) - set(allowed))
    if unknown:
        raise ParamError(f"{path}: unknown keys {unknown}")


def _number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParamError(f"{path}: expected a number")
    return float(value)


def _number_list(value, length: int, path: str) -> list[float]:
    if not isinstance(value, list) or len(value) != length:
        raise ParamError(f"{path}: expected a list of {length} numbers")
    return [_number(v, f"{path}[{i}]") for i, v in enumerate(value)]


def parse_complex(value, path: str) -> complex:
    """Accept either a plain number or an [re, im] pair."""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(float(value), 0.0)
    if isinstance(value, list) and len(value) == 2:
        return complex(_number(value[0], f"{path}[0]"), _number(value[1], f"{path}[1]"))
    raise ParamError(f"{path}: expected a number or an [re, im] pair")


def complex_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def load_state(descriptor, path: str = "state"):
    """Build a state object from its JSON descriptor.

    Returns a PureState for the pure families and a DiagonalMixedState
    for the "mixed" kind.
    """
    d = _ensure_dict(descriptor, path)
    kind = d.get("kind")
    if kind not in STATE_KINDS:
        raise ParamError(f"{path}.kind: expected one of {list(STATE_KINDS)}")
    if kind == "pure":
        _reject_unknown(d, path, ("kind", "amplitudes"))
        raw = d.get("amplitudes")
        if not isinstance(raw, list) or len(raw) != 8:
            raise ParamError(f"{path}.amplitudes: expected a list of 8 entries")
        amps = [
            parse_complex(v, f"{path}.amplitudes[{i}]") for i, v in enumerate(raw)
        ]
        return PureState(np.array(amps))
    if kind == "mixed":
        _reject_unknown(d, path, ("kind", "weights"))
        weights = _number_list(d.get("weights"), 8, f"{path}.weights")
        return DiagonalMixedState(np.array(weights))
    if kind == "product":
        _reject_unknown(d, path, ("kind", "theta", "phi", "delta"))
        theta = _number_list(d.get("theta"), 3, f"{path}.theta")
        phi = _number_list(d.get("phi", [0.0, 0.0, 0.0]), 3, f"{path}.phi")
        delta = _number_list(d.get("delta", [0.0, 0.0, 0.0]), 3, f"{path}.delta")
        return product_state(
            ProductStateAngles(np.array(theta), np.array(phi), np.array(delta))
        )
    if kind == "ghz":
        _reject_unknown(d, path, ("kind", "a", "b"))
        a = parse_complex(d.get("a", [2.0 ** -0.5, 0.0]), f"{path}.a")
        if "b" in d:
            b = parse_complex(d["b"], f"{path}.b")
        else:
            rest = 1.0 - abs(a) ** 2
            if rest < -1e-9:
                raise ParamError(f"{path}.a: |a|^2 exceeds 1")
            b = complex(max(rest, 0.0) ** 0.5, 0.0)
        return ghz(a, b)
    if kind == "w":
        _reject_unknown(d, path, ("kind", "c2", "c3", "c5"))
        return w_state(
            parse_complex(d.get("c2"), f"{path}.c2"),
            parse_complex(d.get("c3"), f"{path}.c3"),
            parse_complex(d.get("c5"), f"{path}.c5"),
        )
    _reject_unknown(d, path, ("kind", "c4", "c6", "c7"))
    return pd_state(
        parse_complex(d.get("c4"), f"{path}.c4"),
        parse_complex(d.get("c6"), f"{path}.c6"),
        parse_complex(d.get("c7"), f"{path}.c7"),
    )


def state_density(state) -> DensityMatrix:
    if isinstance(state, PureState):
        return density_from_pure(state)
    if isinstance(state, DiagonalMixedState):
        return density_from_mixed(state)
    raise ParamError("state: expected a PureState or DiagonalMixedState")


def load_game(descriptor, path: str = "game") -> PayoffTable:
    """Build a payoff table from its JSON descriptor."""
    d = _ensure_dict(descriptor, path)
    kind = d.get("kind")
    if kind not in GAME_KINDS:
        raise ParamError(f"{path}.kind: expected one of {list(GAME_KINDS)}")
    if kind == "pd3":
        _reject_unknown(d, path, ("kind", "params"))
        if "params" in d:
            params = _number_list(d["params"], 6, f"{path}.params")
            return pd3(PdParams(*params))
        return pd3()
    if kind == "coop":
        _reject_unknown(d, path, ("kind",))
        return coop_game()
    _reject_unknown(d, path, ("kind", "rows"))
    rows = d.get("rows")
    if not isinstance(rows, list) or len(rows) != 8:
        raise ParamError(f"{path}.rows: expected 8 rows of 3 numbers")
    entries = [_number_list(r, 3, f"{path}.rows[{i}]") for i, r in enumerate(rows)]
    return PayoffTable(np.array(entries))


def parse_convention(value, path: str = "convention") -> MarginalConvention:
    if value == "parity":
        return MarginalConvention.PARITY
    if value == "conjunction":
        return MarginalConvention.CONJUNCTION
    raise ParamError(f"{path}: expected 'parity' or 'conjunction'")


MARGINAL_KEYS = ("lambda", "mu", "nu", "p_ab", "p_bc", "p_ac", "xi")


def load_marginals(descriptor, path: str = "marginals") -> MarginalSet:
    """Build a MarginalSet from its JSON descriptor."""
    d = _ensure_dict(descriptor, path)
    _reject_unknown(d, path, ("convention",) + MARGINAL_KEYS)
    convention = parse_convention(d.get("convention"), f"{path}.convention")
    values = []
    for key in MARGINAL_KEYS:
        if key not in d:
            raise ParamError(f"{path}.{key}: missing")
        values.append(_number(d[key], f"{path}.{key}"))
    return MarginalSet(*values, convention)


def marginals_to_dict(m: MarginalSet) -> dict:
    return {
        "convention": m.convention.value,
        "lambda": m.lam,
        "mu": m.mu,
        "nu": m.nu,
        "p_ab": m.p_ab,
        "p_bc": m.p_bc,
        "p_ac": m.p_ac,
        "xi": m.xi,
    }


def bell_to_dict(report: BellReport) -> dict:
    return {
        "slack": list(report.slack),
        "satisfied": report.satisfied,
        "convention_note": report.convention_note,
    }


def interval_to_dict(interval: XiInterval) -> dict:
    return {
        "lower": interval.lower,
        "upper": interval.upper,
        "empty": interval.is_empty,
    }


def joint_to_dict(joint: JointDistribution) -> dict:
    return {"prob": list(joint.prob)}


def inversion_to_dict(inv: WeightInversion) -> dict:
    return {
        "weights": list(inv.weights),
        "negative_indices": list(inv.negative_indices),
        "feasible": inv.feasible,
    }


def triple_to_list(s: StrategyTriple) -> list[float]:
    return [s.lam, s.mu, s.nu]


def certificate_to_dict(cert: NeCertificate) -> dict:
    return {
        "kind": "certificate",
        "triple": triple_to_list(cert.triple),
        "player_slack": list(cert.player_slack),
        "is_ne": cert.is_ne,
        "note": cert.note,
    }


def structural_note(text: str) -> dict:
    return {"kind": "note", "text": text}


def coalition_values_to_list(values: list[CoalitionValue]) -> list[dict]:
    return [
        {"members": list(v.members), "value": v.value} for v in values
    ]


def coalition_reduction_to_dict(red: CoalitionReduction) -> dict:
    return {
        "odd_player": red.odd_player,
        "members": list(red.members),
        "full_matrix": [list(row) for row in red.full_matrix],
        "kept_rows": list(red.kept_rows),
        "reduced": [list(row) for row in red.reduced],
        "value": red.value,
        "member_mix": list(red.member_mix),
        "odd_mix": list(red.odd_mix),
    }


def load_schema(name: str) -> dict:
    """Load one of the shipped JSON schema files by bare name."""
    text = (
        resources.files(__package__).joinpath("schemas").joinpath(f"{name}.schema.json")
    ).read_text(encoding="utf-8")
    return json.loads(text)


def render_markdown(title: str, payload: dict) -> str:
    """Generic markdown rendering of a report dictionary."""
    lines = [f"# {title}", ""]
    _md_block(lines, payload, 2)
    while lines and lines[-1] == "":
        lines.pop()
    return "\n".join(lines) + "\n"


def _md_scalar(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format_float(float(value))
    if value is None:
        return "none"
    return str(value)


def _is_scalar(value) -> bool:
    return value is None or isinstance(
        value, (bool, np.bool_, int, np.integer, float, np.floating, str)
    )


def _md_inline(value) -> str:
    if _is_scalar(value):
        return _md_scalar(value)
    if isinstance(value, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_md_inline(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {_md_inline(v)}" for k, v in value.items()) + "}"
    return str(value)


def _md_block(lines: list[str], payload, level: int):
    if isinstance(payload, dict):
        scalars = {k: v for k, v in payload.items() if _is_scalar(v)}
        for key, value in scalars.items():
            lines.append(f"- {key}: {_md_scalar(value)}")
        if scalars:
            lines.append("")
        for key, value in payload.items():
            if _is_scalar(value):
                continue
            lines.append(f"{'#' * level} {key}")
            lines.append("")
            _md_block(lines, value, min(level + 1, 6))
    elif isinstance(payload, (list, tuple)):
        if payload and all(isinstance(v, dict) for v in payload):
            keys: list[str] = []
            for item in payload:
                for k in item:
                    if k not in keys:
                        keys.append(k)
            lines.append("| " + " | ".join(keys) + " |")
            lines.append("|" + "---|" * len(keys))
            for item in payload:
                cells = [_md_inline(item.get(k)) for k in keys]
                lines.append("| " + " | ".join(cells) + " |")
            lines.append("")
        else:
            lines.append(_md_inline(list(payload)))
            lines.append("")
    else:
        lines.append(_md_scalar(payload))
        lines.append("")
