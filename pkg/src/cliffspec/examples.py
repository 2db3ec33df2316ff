"""Built-in triples with their published constants."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .pauli import SIGMA1, SIGMA2, SIGMA3, CanonicalParams, HermitianTriple


@dataclass(frozen=True)
class Example:
    name: str
    triple: HermitianTriple
    stated_e: float | None = None
    stated_c: float | None = None
    components: int | None = None
    spectrum_points: tuple[tuple[float, float, float], ...] = ()


def _from_params(a, alpha2: complex, alpha3: complex) -> HermitianTriple:
    return CanonicalParams(np.zeros(3), np.array(a, dtype=float), alpha2, alpha3).reconstruct()


_S = 1.0 / math.sqrt(2.0)

EXAMPLES: dict[str, Example] = {
    "ex4.1": Example("ex4.1", _from_params((2, 1, 2), 1 - 3j, 2 + 1j),
                     stated_e=105.0, stated_c=-24.0, components=1),
    "ex4.2": Example("ex4.2", _from_params((math.sqrt(10), 2, -2), 2 - 1j, 3 + 2j),
                     stated_e=324.0, stated_c=0.0),
    # stated c is 1384 - 1236; the listed a gives |a|^4 = 1444
    "ex4.3": Example("ex4.3", _from_params((6, 1, -1), 2 - 1j, 3 + 2j),
                     stated_e=1236.0, stated_c=148.0, components=2),
    "ex4.4": Example("ex4.4", _from_params((1, 1, 0), 0j, 1 + 1j),
                     stated_e=4.0, stated_c=0.0, components=0, spectrum_points=((0.0, 0.0, 0.0),)),
    "ex4.5": Example("ex4.5", _from_params((1, 1, 0), 0j, 1j),
                     stated_e=3.0, stated_c=1.0, components=0,
                     spectrum_points=((_S, _S, 0.0), (-_S, -_S, 0.0))),
    "lemniscate": Example("lemniscate", HermitianTriple(SIGMA1 / 2, SIGMA2, SIGMA3 / 2)),
}


def get_example(name: str) -> Example:
    try:
        return EXAMPLES[name]
    except KeyError:
        raise ValidationError(
            f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}") from None
