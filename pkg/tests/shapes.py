"""Small named inputs shared by several test modules."""
from __future__ import annotations

import math
from fractions import Fraction

from simprep import SimplicialComplex, load_scene

SPHERE_CATALOG = {
    ("a", "b"): ["c", "d"],
    ("c", "d"): ["e", "f"],
    ("e", "f"): [],
}

CIRCLE_CATALOG = {
    ("0", "1"): ["p", "q"],
    ("p", "q"): [],
}

# a ring of 8 unit squares around the centre square [1,2]^2, cut into two L-shaped halves
ANNULUS_SCENE = {
    "dim": 2,
    "sets": {
        "L": [[[0, 0], [2, 1]], [[0, 0], [1, 2]]],
        "R": [[[2, 0], [3, 3]], [[0, 2], [3, 3]]],
    },
}


def annulus():
    return load_scene(ANNULUS_SCENE)


def torus(n: int = 8, k: int = 4) -> SimplicialComplex:
    """Triangulated n-by-k grid torus; vertex (a, b) has id (a % n) * k + (b % k)."""
    def vid(a, b):
        return (a % n) * k + (b % k)

    tris = []
    for a in range(n):
        for b in range(k):
            tris.append((vid(a, b), vid(a + 1, b), vid(a + 1, b + 1)))
            tris.append((vid(a, b), vid(a, b + 1), vid(a + 1, b + 1)))
    return SimplicialComplex(tris)


def torus_heights(n: int = 8, k: int = 4) -> dict[int, Fraction]:
    """Height of the standing torus, rounded to 1/1000."""
    out = {}
    for a in range(n):
        for b in range(k):
            u = 2 * math.pi * a / n - math.pi / 2
            v = 2 * math.pi * b / k
            z = (2 + math.cos(v)) * math.sin(u)
            out[a * k + b] = Fraction(round(z * 1000), 1000)
    return out


def torus_levels(n: int = 8, k: int = 4) -> dict[int, int]:
    """Heights quantized into the six critical bands t0..t5."""
    def band(z):
        if z <= -3:
            return 0
        if z < -1:
            return 1
        if z <= 0:
            return 2
        if z < 1:
            return 3
        if z < 3:
            return 4
        return 5

    return {v: band(z) for v, z in torus_heights(n, k).items()}
