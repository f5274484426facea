"""Evaluation environments: named spaces plus tabulated atoms.

The on-disk format is JSON::

    {
      "mode": "mul",
      "spaces": {"X": {"points": ["x1", "x2"], "weights": [0.5, 0.5]}},
      "atoms":  {"f": {"context": ["X"], "values": [1, 3]}}
    }

Atom values are row-major over the context spaces (last space fastest) and
may be JSON numbers or the strings "inf"/"-inf".  ``mode`` declares which
carrier the tables live in: "mul" values must be nonnegative, "add" values
may be any extended real; NaN is rejected everywhere.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import QuantLogicError
from .extreal import check_add, check_mul, napier, napier_inv
from .spaces import Space, make_space


@dataclass(frozen=True)
class AtomTable:
    """A tabulated atom: context space names and a row-major value table."""

    context: tuple[str, ...]
    values: tuple[float, ...]


@dataclass(frozen=True)
class Environment:
    mode: str  # "mul" | "add"
    spaces: dict[str, Space]
    atoms: dict[str, AtomTable]


def make_environment(mode: str, spaces: dict[str, Space],
                     atoms: dict[str, AtomTable]) -> Environment:
    """Validate and build an Environment."""
    if mode not in ("mul", "add"):
        raise QuantLogicError("INVALID_MODE", f"mode must be 'mul' or 'add', got {mode!r}")
    check = check_mul if mode == "mul" else check_add
    for name, table in atoms.items():
        size = 1
        for space_name in table.context:
            if space_name not in spaces:
                raise QuantLogicError(
                    "UNKNOWN_SPACE",
                    f"atom {name!r} refers to unknown space {space_name!r}")
            size *= len(spaces[space_name])
        if len(table.values) != size:
            raise QuantLogicError(
                "VALUE_COUNT",
                f"atom {name!r}: expected {size} values, got {len(table.values)}")
        for v in table.values:
            check(v)
    return Environment(mode, dict(spaces), dict(atoms))


def _decode_number(x, where: str) -> float:
    if isinstance(x, str):
        t = x.strip()
        if t == "inf":
            return math.inf
        if t == "-inf":
            return -math.inf
        raise QuantLogicError("ENV_FORMAT", f"{where}: bad value token {x!r}")
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise QuantLogicError("ENV_FORMAT", f"{where}: expected a number, got {x!r}")
    return float(x)


def _encode_number(x: float):
    if x == math.inf:
        return "inf"
    if x == -math.inf:
        return "-inf"
    return x


def environment_from_dict(doc: dict) -> Environment:
    if not isinstance(doc, dict):
        raise QuantLogicError("ENV_FORMAT", "environment must be a JSON object")
    mode = doc.get("mode", "mul")
    spaces: dict[str, Space] = {}
    for name, spec in (doc.get("spaces") or {}).items():
        if not isinstance(spec, dict) or "points" not in spec or "weights" not in spec:
            raise QuantLogicError("ENV_FORMAT",
                                  f"space {name!r} needs 'points' and 'weights'")
        weights = [_decode_number(w, f"space {name!r}") for w in spec["weights"]]
        spaces[name] = make_space(spec["points"], weights, name=name)
    atoms: dict[str, AtomTable] = {}
    for name, spec in (doc.get("atoms") or {}).items():
        if not isinstance(spec, dict) or "context" not in spec or "values" not in spec:
            raise QuantLogicError("ENV_FORMAT",
                                  f"atom {name!r} needs 'context' and 'values'")
        values = tuple(_decode_number(v, f"atom {name!r}") for v in spec["values"])
        atoms[name] = AtomTable(tuple(str(s) for s in spec["context"]), values)
    return make_environment(mode, spaces, atoms)


def environment_to_dict(env: Environment) -> dict:
    return {
        "mode": env.mode,
        "spaces": {
            name: {"points": list(sp.points),
                   "weights": [_encode_number(w) for w in sp.weights]}
            for name, sp in env.spaces.items()
        },
        "atoms": {
            name: {"context": list(t.context),
                   "values": [_encode_number(v) for v in t.values]}
            for name, t in env.atoms.items()
        },
    }


def load_environment(path: str) -> Environment:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as e:
        raise QuantLogicError("ENV_IO", f"cannot read {path!r}: {e}") from None
    except json.JSONDecodeError as e:
        raise QuantLogicError("ENV_FORMAT", f"{path!r} is not valid JSON: {e}") from None
    return environment_from_dict(doc)


def save_environment(env: Environment, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(environment_to_dict(env), fh, indent=2)
        fh.write("\n")


def translate_environment(env: Environment) -> Environment:
    """Napier-translate every atom table into the opposite carrier."""
    conv = napier if env.mode == "mul" else napier_inv
    new_mode = "add" if env.mode == "mul" else "mul"
    atoms = {name: AtomTable(t.context, tuple(conv(v) for v in t.values))
             for name, t in env.atoms.items()}
    return make_environment(new_mode, env.spaces, atoms)
