"""JSON symbol specifications accepted by the CLI.

Schema (one object per symbol):
  {"kind": "explicit", "values": [...],
   "tail": {"type": "finite"} | {"type": "geometric", "ratio": r, "bound": C}}
  {"kind": "spherical", "q": <int> | "inf", "s": {"re": ..., "im": ...}}
  {"kind": "lacunary"}

Numeric entries may be plain numbers, [re, im] pairs, or {"re":..., "im":...}.
"""

from __future__ import annotations

import math

from .spherical import spherical_symbol
from .symbols import (
    INF,
    FiniteSupport,
    Geometric,
    RadialSymbol,
    explicit_symbol,
    lacunary_counterexample,
)


def parse_complex(obj) -> complex:
    if isinstance(obj, (int, float)):
        return complex(obj)
    if isinstance(obj, str):
        return complex(obj.replace(" ", ""))
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        return complex(float(obj[0]), float(obj[1]))
    if isinstance(obj, dict):
        return complex(float(obj.get("re", 0.0)), float(obj.get("im", 0.0)))
    raise ValueError(f"cannot interpret {obj!r} as a complex number")


def parse_degree(obj):
    if obj in ("inf", "INF", "Inf", "infinity"):
        return INF
    if isinstance(obj, str):
        obj = int(obj)
    if isinstance(obj, float) and math.isinf(obj):
        return INF
    return int(obj)


def symbol_from_spec(spec: dict) -> tuple[RadialSymbol, dict]:
    """Build the symbol and echo a normalized description of the input."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ValueError("symbol spec must be an object with a 'kind' field")
    kind = spec["kind"]
    if kind == "explicit":
        values = [parse_complex(v) for v in spec.get("values", [])]
        tail_spec = spec.get("tail", {"type": "finite"})
        ttype = tail_spec.get("type", "finite")
        if ttype == "finite":
            tail = FiniteSupport(len(values))
        elif ttype == "geometric":
            tail = Geometric(
                ratio=float(tail_spec["ratio"]),
                bound=float(tail_spec["bound"]),
                onset=int(tail_spec.get("onset", 0)),
            )
        else:
            raise ValueError(f"unknown tail type {ttype!r}")
        sym = explicit_symbol(values, tail=tail, name="explicit")
        echo = {"kind": "explicit", "n_values": len(values), "tail": ttype}
        return sym, echo
    if kind == "spherical":
        q = parse_degree(spec["q"])
        if "s" in spec:
            s = parse_complex(spec["s"])
            sym = spherical_symbol(q, s=s)
            echo = {"kind": "spherical", "q": "inf" if q == INF else q, "s": [s.real, s.imag]}
        elif "z" in spec:
            z = parse_complex(spec["z"])
            sym = spherical_symbol(q, z=z)
            echo = {"kind": "spherical", "q": q, "z": [z.real, z.imag]}
        else:
            raise ValueError("spherical symbol needs 's' or 'z'")
        return sym, echo
    if kind == "lacunary":
        return lacunary_counterexample(), {"kind": "lacunary"}
    raise ValueError(f"unknown symbol kind {kind!r}")
