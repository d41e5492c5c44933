"""Wire formats: loaders, deterministic JSON, markdown."""

import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from finegames import (
    MarginalConvention,
    ParamError,
    load_game,
    load_marginals,
    load_schema,
    load_state,
    render_json,
    render_markdown,
    state_density,
)
from finegames.serialize import format_float, parse_complex


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_formatting_round_trips(x):
    assert float(format_float(x)) == x


def test_float_formatting_rejects_non_finite():
    with pytest.raises(ValueError):
        format_float(math.nan)


def test_render_json_is_deterministic_and_ordered():
    payload = {"b": 1.0, "a": [True, None, 0.5], "nested": {"z": 1, "y": 2}}
    text = render_json(payload)
    assert text == render_json(payload)
    assert text.endswith("\n")
    assert text.index('"b"') < text.index('"a"')
    assert json.loads(text) == {
        "b": 1.0,
        "a": [True, None, 0.5],
        "nested": {"z": 1, "y": 2},
    }


def test_render_json_handles_numpy_scalars():
    payload = {"x": np.float64(0.25), "v": np.arange(3), "flag": np.bool_(True)}
    parsed = json.loads(render_json(payload))
    assert parsed == {"x": 0.25, "v": [0, 1, 2], "flag": True}


def test_parse_complex_accepts_number_and_pair():
    assert parse_complex(0.5, "z") == complex(0.5, 0.0)
    assert parse_complex([0.5, -0.25], "z") == complex(0.5, -0.25)
    with pytest.raises(ParamError):
        parse_complex("half", "z")
    with pytest.raises(ParamError):
        parse_complex([1.0], "z")


def test_load_state_pure_and_mixed():
    amps = [[1.0, 0.0]] + [[0.0, 0.0]] * 7
    state = load_state({"kind": "pure", "amplitudes": amps})
    assert state.probabilities()[0] == pytest.approx(1.0)
    mixed = load_state({"kind": "mixed", "weights": [0.125] * 8})
    assert np.allclose(state_density(mixed).diagonal(), 0.125)


def test_load_state_ghz_defaults_complete_the_norm():
    state = load_state({"kind": "ghz", "a": 0.6})
    q = state.probabilities()
    assert q[0] == pytest.approx(0.36, abs=1e-12)
    assert q[7] == pytest.approx(0.64, abs=1e-12)


def test_load_state_rejects_unknown_fields():
    with pytest.raises(ParamError):
        load_state({"kind": "ghz", "a": 0.6, "phase": 1.0})
    with pytest.raises(ParamError):
        load_state({"kind": "nonsense"})
    with pytest.raises(ParamError):
        load_state({"kind": "pure", "amplitudes": [[1.0, 0.0]] * 4})


def test_load_game_variants():
    table = load_game({"kind": "pd3"})
    assert table.entries[0, 0] == 7.0
    table = load_game({"kind": "pd3", "params": [7, 9, 3, 0, 1, 5]})
    assert table.entries[4, 0] == 9.0
    table = load_game({"kind": "coop"})
    assert table.entries[1].tolist() == [1.0, 1.0, -2.0]
    rows = [[float(i), 0.0, -float(i)] for i in range(8)]
    table = load_game({"kind": "custom", "rows": rows})
    assert table.entries[3, 0] == 3.0
    with pytest.raises(ParamError):
        load_game({"kind": "custom", "rows": rows[:4]})


def test_load_marginals_requires_all_fields():
    descriptor = {
        "convention": "conjunction",
        "lambda": 0.5, "mu": 0.5, "nu": 0.5,
        "p_ab": 0.25, "p_bc": 0.25, "p_ac": 0.25, "xi": 0.125,
    }
    m = load_marginals(descriptor)
    assert m.convention is MarginalConvention.CONJUNCTION
    assert m.xi == 0.125
    with pytest.raises(ParamError):
        load_marginals({k: v for k, v in descriptor.items() if k != "xi"})
    with pytest.raises(ParamError):
        load_marginals({**descriptor, "extra": 1.0})
    with pytest.raises(ParamError):
        load_marginals({**descriptor, "convention": "both"})


def test_schemas_load_and_validate():
    jsonschema = pytest.importorskip("jsonschema")
    state_schema = load_schema("state")
    jsonschema.validate({"kind": "ghz", "a": [0.6, 0.0]}, state_schema)
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate({"kind": "ghz", "phase": 0.1}, state_schema)
    game_schema = load_schema("game")
    jsonschema.validate({"kind": "pd3", "params": [7, 9, 3, 0, 1, 5]}, game_schema)
    marginals_schema = load_schema("marginals")
    jsonschema.validate(
        {
            "convention": "parity",
            "lambda": 0.5, "mu": 0.5, "nu": 0.5,
            "p_ab": 1.0, "p_bc": 1.0, "p_ac": 1.0, "xi": 0.5,
        },
        marginals_schema,
    )


def test_render_markdown_structure():
    text = render_markdown("demo", {"alpha": 1.5, "inner": {"beta": [1, 2]}})
    assert text.startswith("# demo\n")
    assert "- alpha: 1.5" in text
    assert "## inner" in text
