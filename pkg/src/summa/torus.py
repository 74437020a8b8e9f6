"""Symbolic points on the torus, indexed by orbit label and shift offset.

The shift automorphism acts on the torus by translation; a point is
recorded as a pair (orbit label, integer offset), meaning "the offset-th
translate of this orbit's pinned representative".  No coordinates are
ever computed.  Distinct labels are guaranteed by the caller to pin
representatives in distinct translation orbits, so points on different
orbits never collide.

The reserved label ``HAT`` names the anchor orbit whose representative is
the group origin.
"""

import re
from dataclasses import dataclass

HAT = "HAT"

ORBIT_LABEL_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


def check_orbit_label(label: str) -> str:
    if not isinstance(label, str) or not ORBIT_LABEL_RE.match(label):
        raise ValueError(f"bad orbit label {label!r}")
    return label


@dataclass(frozen=True, order=True)
class OrbitPoint:
    """A torus point: the ``offset``-th shift-translate on orbit ``orbit``."""

    orbit: str
    offset: int

    def __post_init__(self):
        check_orbit_label(self.orbit)
        if not isinstance(self.offset, int):
            raise ValueError(f"offset must be int, got {self.offset!r}")


def shift_point(p: OrbitPoint, k: int = 1) -> OrbitPoint:
    """Where the pole at ``p`` lands after composing with the k-th shift.

    Substituting the shifted variable moves a pole at offset n to offset
    n - k: the function translated forward sees its singularities behind
    it.
    """
    return OrbitPoint(p.orbit, p.offset - k)
