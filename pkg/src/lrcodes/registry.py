"""Construction specs: a tag plus parameters, parsed from JSON or ``key=value`` text."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .gf import field_of_order
from .recovery import LocalCode

TAGS = ("tamo-barg", "hermitian", "power-cover", "gk", "hermitian-lifted", "nt-lifted")

# tag -> (required, optional-with-defaults)
PARAMS = {
    "tamo-barg": (("q", "r", "k"), {"source": "multiplicative", "generators": None}),
    "hermitian": (("q", "l"), {}),
    "power-cover": (("q", "s", "y_cap"), {}),
    "gk": (("q", "N", "l"), {}),
    "hermitian-lifted": (("q",), {}),
    "nt-lifted": (("r",), {"delta_convention": "interpolation-consistent"}),
}


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class CodeSpec:
    construction: str
    parameters: dict = field(default_factory=dict)

    def canonical(self) -> dict:
        required, optional = PARAMS[self.construction]
        params = {k: self.parameters[k] for k in required}
        for k, default in optional.items():
            v = self.parameters.get(k, default)
            if v is not None:
                params[k] = v
        return {"construction": self.construction, "parameters": dict(sorted(params.items()))}

    def to_json(self) -> str:
        return json.dumps(self.canonical(), sort_keys=True)

    def build(self) -> LocalCode:
        return build(self)


def _coerce(value):
    if isinstance(value, str):
        if "," in value:
            return [_coerce(v) for v in value.split(",") if v]
        try:
            return int(value)
        except ValueError:
            return value
    return value


def make_spec(construction: str, parameters: dict) -> CodeSpec:
    if construction not in PARAMS:
        raise SpecError(f"unknown construction {construction!r}; choose from {', '.join(TAGS)}")
    required, optional = PARAMS[construction]
    params = {k: _coerce(v) for k, v in parameters.items()}
    missing = [k for k in required if k not in params]
    if missing:
        raise SpecError(f"{construction} needs parameter(s): {', '.join(missing)}")
    unknown = set(params) - set(required) - set(optional)
    if unknown:
        raise SpecError(f"{construction} does not take: {', '.join(sorted(unknown))}")
    for k in required:
        if not isinstance(params[k], int):
            raise SpecError(f"parameter {k} must be an integer, got {params[k]!r}")
    if isinstance(params.get("generators"), int):
        params["generators"] = [params["generators"]]
    return CodeSpec(construction, CodeSpec(construction, params).canonical()["parameters"])


def parse_spec(obj) -> CodeSpec:
    """Accept ``{"construction", "parameters"}`` or the flat ``{"type", ...}`` form."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise SpecError(f"malformed spec: {exc}") from exc
    if not isinstance(obj, dict):
        raise SpecError("a spec must be a JSON object")
    if "construction" in obj:
        params = obj.get("parameters", {})
        if not isinstance(params, dict):
            raise SpecError("parameters must be an object")
        return make_spec(obj["construction"], params)
    if "type" in obj:
        rest = {k: v for k, v in obj.items() if k != "type"}
        return make_spec(obj["type"], rest)
    raise SpecError("spec needs a 'construction' (or 'type') field")


def parse_assignments(construction: str, items) -> CodeSpec:
    params = {}
    for item in items:
        if "=" not in item:
            raise SpecError(f"expected key=value, got {item!r}")
        k, v = item.split("=", 1)
        params[k.strip()] = v.strip()
    return make_spec(construction, params)


def build(spec: CodeSpec, **options) -> LocalCode:
    p = dict(spec.parameters)
    tag = spec.construction
    if tag == "tamo-barg":
        from .tamo_barg import build_tamo_barg
        return build_tamo_barg(field_of_order(p["q"]), p["r"], p["k"], p["source"], p.get("generators"))
    if tag == "hermitian":
        from .curve_cover import build_hermitian_lrc
        return build_hermitian_lrc(p["q"], p["l"])
    if tag == "power-cover":
        from .curve_cover import build_power_cover_lrc
        return build_power_cover_lrc(p["q"], p["s"], p["y_cap"], **options)
    if tag == "gk":
        from .fiber_avail import build_gk_lrc
        return build_gk_lrc(p["q"], p["N"], p["l"], **options)
    if tag == "hermitian-lifted":
        from .lifted import build_hermitian_lifted
        return build_hermitian_lifted(p["q"])
    if tag == "nt-lifted":
        from .lifted import build_nt_lifted
        return build_nt_lifted(p["r"], p["delta_convention"])
    raise SpecError(f"unknown construction {tag!r}")
