"""Single-qudit Pauli noise channels.

A channel (kind, p) leaves the qudit alone with probability 1-p and
otherwise applies a uniformly random nonidentity error from its support:

    'f' (flip):          X^a, a in 1..d-1
    'p' (phase):         Z^b, b in 1..d-1
    'd' (depolarizing):  X^a Z^b, (a, b) != (0, 0)

Every sampling call consumes exactly one uniform float and one integer draw
per event, whether or not an error fires, so shot streams stay aligned
across circuits that only differ in where errors land.
"""

from __future__ import annotations

import numpy as np

from .errors import ShapeError

NOISE_KINDS = ("f", "p", "d")


def _components(kind: str, idx, d: int):
    # idx is uniform on [0, d^2-1); (d-1) divides d^2-1 so idx % (d-1)
    # is uniform too.
    if kind == "f":
        return 1 + idx % (d - 1), idx * 0
    if kind == "p":
        return idx * 0, 1 + idx % (d - 1)
    if kind == "d":
        return (idx + 1) // d, (idx + 1) % d
    raise ShapeError(f"unknown noise kind {kind!r}")


def sample_error(kind: str, prob: float, d: int, rng: np.random.Generator):
    """One (a, b) error draw; (0, 0) when the channel does not fire."""
    u = rng.random()
    idx = int(rng.integers(0, d * d - 1))
    if u >= prob:
        return 0, 0
    a, b = _components(kind, idx, d)
    return int(a), int(b)


def sample_error_batch(kind: str, prob: float, d: int, rng: np.random.Generator,
                       size: int):
    """Vectorized (a, b) arrays of shape (size,) for a batch of shots."""
    u = rng.random(size)
    idx = rng.integers(0, d * d - 1, size=size, dtype=np.int64)
    a, b = _components(kind, idx, d)
    fire = u < prob
    return np.where(fire, a, 0), np.where(fire, b, 0)


def error_distribution(kind: str, prob: float, d: int) -> dict:
    """Exact probability of each (a, b) error the channel can produce."""
    if kind == "f":
        support = [(a, 0) for a in range(1, d)]
    elif kind == "p":
        support = [(0, b) for b in range(1, d)]
    elif kind == "d":
        support = [(a, b) for a in range(d) for b in range(d) if (a, b) != (0, 0)]
    else:
        raise ShapeError(f"unknown noise kind {kind!r}")
    out = {(0, 0): 1.0 - prob}
    for pair in support:
        out[pair] = prob / len(support)
    return out
