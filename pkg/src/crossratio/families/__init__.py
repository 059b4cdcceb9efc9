"""Generators for the crossing-ratio graph families and their drawings."""

from __future__ import annotations

from typing import Union

from ..drawings import TopologicalDrawing
from ..graphs import Graph, GraphError
from .fan import FanFamily, gen_fan, k33_subdivision_registry
from .oneplanar import (
    OneplanarFamily,
    gen_oneplanar,
    gen_oneplanar_multi,
    gen_oneplanar_multi_family,
)
from .quasi import (
    QuasiFamily,
    gen_kquasi,
    gen_kquasi_family,
    gen_quasi,
)

Family = Union[OneplanarFamily, QuasiFamily, FanFamily]

_STYLES = {
    OneplanarFamily: ("saturated", "min"),
    QuasiFamily: ("min", "quasi-planar"),
    FanFamily: ("min", "fan-planar"),
}


def build_drawing(family: Family, style: str) -> TopologicalDrawing:
    """Construct the named drawing of a generated family instance.

    Styles: oneplanar (plain or bundled): ``saturated`` and ``min``; quasi
    and k-quasi: ``min`` and (hexagon only) ``quasi-planar``; fan: ``min``
    and ``fan-planar``.
    """
    from . import fan as fan_mod
    from . import oneplanar as one_mod
    from . import quasi as quasi_mod

    if isinstance(family, OneplanarFamily):
        if style == "saturated":
            return one_mod.build_saturated(family)
        if style == "min":
            return one_mod.build_min(family)
    elif isinstance(family, QuasiFamily):
        if style == "min":
            return quasi_mod.build_min(family)
        if style == "quasi-planar":
            return quasi_mod.build_quasi_planar(family)
    elif isinstance(family, FanFamily):
        if style == "min":
            return fan_mod.build_min(family)
        if style == "fan-planar":
            return fan_mod.build_fan_planar(family)
    else:
        raise GraphError(f"not a family instance: {family!r}")
    allowed = _STYLES[type(family)]
    raise GraphError(
        f"style {style!r} does not apply to {type(family).__name__}; "
        f"choose from {allowed}"
    )


__all__ = [
    "Family",
    "FanFamily",
    "OneplanarFamily",
    "QuasiFamily",
    "build_drawing",
    "gen_fan",
    "gen_kquasi",
    "gen_kquasi_family",
    "gen_oneplanar",
    "gen_oneplanar_multi",
    "gen_oneplanar_multi_family",
    "gen_quasi",
    "k33_subdivision_registry",
]
