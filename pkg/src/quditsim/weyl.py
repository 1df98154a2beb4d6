"""Stabilizer simulation for arbitrary qudit dimension via Weyl operators.

A single-qudit Weyl operator is W_(a,b) = tau^(-ab) Z^a X^b with
tau = exp(i*pi*(d^2+1)/d); tau^2 = omega and tau has order d' (d for odd d,
2d for even d).  An n-qudit element is tau^phi W_v with coordinate row
v = (a_1..a_n | b_1..b_n) taken mod d'.  Products and powers are clean:

    (tau^f W_v)(tau^g W_w) = tau^(f+g+<v,w>) W_(v+w),  <v,w> = a.b' - a'.b
    (tau^f W_v)^k          = tau^(kf) W_(kv)

Coordinates d apart describe the same operator up to sign:

    W_(v + d*u) = tau^(-d(a.ub + b.ua + d*ua.ub)) W_v,  u = (ua | ub),

which is what lets Z-basis measurement canonicalize a group element with
coordinates m*(e_j|0) mod d into an exact tau^c Z_j^m.

The state is held as a list of at most 2n phase-tracked generators of the
stabilizer group.  Unlike the odd-prime tableau, composite d may genuinely
need more than n generators (for d=4, (|0>+|2>)/sqrt(2) needs both X^2 and
Z^2), so the list is re-reduced after each measurement by unimodular two-row
gcd elimination instead of keeping a fixed destabilizer pairing.
"""

from __future__ import annotations

import math

import numpy as np

from .circuit import MeasurementRecord
from .errors import DimensionError, ShapeError
from .pauli import Dimension, PauliString, _as_dimension
from .snf import kernel_mod, solve_mod


def weyl_mul(f1: int, v1: np.ndarray, f2: int, v2: np.ndarray, dim: Dimension):
    """Product of two phase-tracked Weyl elements on the same register."""
    dp = dim.d_prime
    n = len(v1) // 2
    bracket = int(v1[:n] @ v2[n:]) - int(v2[:n] @ v1[n:])
    return (f1 + f2 + bracket) % dp, (v1 + v2) % dp


def weyl_pow(f: int, v: np.ndarray, k: int, dim: Dimension):
    dp = dim.d_prime
    return (k * f) % dp, (k * v) % dp


def weyl_canonical(f: int, v: np.ndarray, dim: Dimension):
    """Fold coordinates into [0, d); the d-multiples become phase."""
    d, dp = dim.d, dim.d_prime
    n = len(v) // 2
    base = v % d
    lift = (v - base) % dp
    if not lift.any():
        return f % dp, base
    u = lift // d
    corr = int(base[:n] @ u[n:]) + int(base[n:] @ u[:n]) + d * int(u[:n] @ u[n:])
    return (f - d * corr) % dp, base


def weyl_from_pauli(p: PauliString):
    """Coordinates and tau phase of w^r prod X^x Z^z.

    Per slot X^x Z^z = omega^(-zx) Z^z X^x = tau^(-xz) W_(z,x), and the
    omega phase prefactor contributes two tau units per power.
    """
    v = np.concatenate([p.z, p.x]).astype(np.int64)
    f = (2 * p.r - int(p.x @ p.z)) % p.dimension.d_prime
    return f, v % p.dimension.d_prime


def _ext_gcd(a: int, b: int):
    """(g, x, y) with x*a + y*b = g = gcd(a, b)."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    return old_r, old_x, old_y


def _divisors(d: int):
    return [m for m in range(1, d + 1) if d % m == 0]


class WeylTableau:
    """Phase-tracked stabilizer generators for any qudit dimension d >= 2."""

    def __init__(self, n: int, d):
        dim = _as_dimension(d)
        if n < 1:
            raise ShapeError(f"need at least 1 qudit, got n={n}")
        self.dimension = dim
        self.d = dim.d
        self.dp = dim.d_prime
        self.n = n
        # rows start as the Z_j generators of |0...0>
        self.coords = np.zeros((n, 2 * n), dtype=np.int64)
        for j in range(n):
            self.coords[j, j] = 1
        self.phases = np.zeros(n, dtype=np.int64)
        self.measurements_done = 0

    def copy(self) -> "WeylTableau":
        out = WeylTableau.__new__(WeylTableau)
        out.dimension = self.dimension
        out.d = self.d
        out.dp = self.dp
        out.n = self.n
        out.coords = self.coords.copy()
        out.phases = self.phases.copy()
        out.measurements_done = self.measurements_done
        return out

    def to_array(self) -> np.ndarray:
        """Debug dump: phase row, then Z block, then X block, one generator
        per column."""
        n = self.n
        return np.vstack([self.phases[None, :],
                          self.coords[:, :n].T,
                          self.coords[:, n:].T])

    def rows(self):
        return [(int(self.phases[i]), self.coords[i].copy())
                for i in range(len(self.phases))]

    def check_invariants(self) -> None:
        d, n = self.d, self.n
        a, b = self.coords[:, :n], self.coords[:, n:]
        comm = (a @ b.T - b @ a.T) % d
        if np.any(comm):
            raise ShapeError("stabilizer generators do not commute")

    # -- gates ---------------------------------------------------------------

    def apply_gate(self, name: str, *qudits: int) -> None:
        name = {"H": "F", "H_INV": "F_INV", "CNOT": "SUM",
                "CNOT_INV": "SUM_INV"}.get(name, name)
        n, dp = self.n, self.dp
        for q in qudits:
            if not 0 <= q < n:
                raise ShapeError(f"qudit index {q} out of range for n={n}")
        C, F = self.coords, self.phases
        if name in ("SUM", "SUM_INV"):
            if len(qudits) != 2 or qudits[0] == qudits[1]:
                raise ShapeError(f"{name} takes 2 distinct qudits, got {qudits}")
            c, t = qudits
            s = 1 if name == "SUM" else -1
            C[:, c] = (C[:, c] - s * C[:, t]) % dp
            C[:, n + t] = (C[:, n + t] + s * C[:, n + c]) % dp
            return
        if len(qudits) != 1:
            raise ShapeError(f"{name} takes 1 qudit, got {len(qudits)}")
        (j,) = qudits
        a = C[:, j].copy()
        b = C[:, n + j].copy()
        if name == "F":
            C[:, j], C[:, n + j] = b, (-a) % dp
        elif name == "F_INV":
            C[:, j], C[:, n + j] = (-b) % dp, a
        elif name == "P":
            C[:, j] = (a + b) % dp
            if self.d % 2 == 1:
                F[:] = (F - b) % dp
        elif name == "P_INV":
            C[:, j] = (a - b) % dp
            if self.d % 2 == 1:
                F[:] = (F + b) % dp
        elif name == "X":
            F[:] = (F - 2 * a) % dp
        elif name == "X_INV":
            F[:] = (F + 2 * a) % dp
        elif name == "Z":
            F[:] = (F + 2 * b) % dp
        elif name == "Z_INV":
            F[:] = (F - 2 * b) % dp
        else:
            raise ShapeError(f"unknown gate name {name!r}")

    def apply_pauli_error(self, j: int, a: int, b: int) -> None:
        """Conjugate every generator by X^a Z^b on qudit j."""
        n, dp = self.n, self.dp
        self.phases = (self.phases
                       + 2 * (b * self.coords[:, n + j] - a * self.coords[:, j])) % dp

    # -- measurement -----------------------------------------------------------

    def _z_support(self, j: int):
        """Outcome support of a Z measurement on qudit j, with its Z_j power.

        Finds the smallest m dividing d such that some product of generators
        has coordinates m*(e_j|0) mod d, canonicalizes that product to
        tau^c Z_j^m, and intersects the eigenvalue constraint with 0..d-1.
        """
        d, dp, n = self.d, self.dp, self.n
        target = np.zeros(2 * n, dtype=np.int64)
        target[j] = 1
        a_cols = (self.coords % d).T  # (2n, k) system over Z_d
        for m in _divisors(d):
            y = solve_mod(a_cols, (m * target) % d, d)
            if y is None:
                continue
            f, v = 0, np.zeros(2 * n, dtype=np.int64)
            for i, yi in enumerate(y):
                gf, gv = weyl_pow(int(self.phases[i]), self.coords[i], int(yi),
                                  self.dimension)
                f, v = weyl_mul(f, v, gf, gv, self.dimension)
            shift = (v - m * target) % dp
            assert not np.any(shift % d), "solution does not hit the target mod d"
            f, v = weyl_canonical(f, v, self.dimension)
            assert np.array_equal(v, (m * target) % d), \
                "canonical coordinates are not a pure Z power"
            support = [k for k in range(d) if (2 * k * m + f) % dp == 0]
            assert len(support) == m, "support size disagrees with the Z power"
            return m, support
        raise AssertionError("m = d is always solvable; unreachable")

    def outcome_distribution(self, j: int) -> dict:
        m, support = self._z_support(j)
        return {k: 1.0 / len(support) for k in support}

    def measure_z(self, j: int, rng: np.random.Generator) -> MeasurementRecord:
        d, dp, n = self.d, self.dp, self.n
        if not 0 <= j < n:
            raise ShapeError(f"qudit index {j} out of range for n={n}")
        seq = self.measurements_done
        self.measurements_done += 1
        m, support = self._z_support(j)
        k = int(support[int(rng.integers(len(support)))])

        # generators commuting with Z_j: kernel of the X-exponent row mod d
        beta = [[int(x) for x in (self.coords[:, n + j] % d)]]
        survivors = []
        for y in kernel_mod(beta, d):
            f, v = 0, np.zeros(2 * n, dtype=np.int64)
            for i, yi in enumerate(y):
                gf, gv = weyl_pow(int(self.phases[i]), self.coords[i], int(yi),
                                  self.dimension)
                f, v = weyl_mul(f, v, gf, gv, self.dimension)
            survivors.append((f, v))
        inserted = np.zeros(2 * n, dtype=np.int64)
        inserted[j] = 1
        survivors.append(((-2 * k) % dp, inserted))
        self._set_rows(self._reduce(survivors))
        return MeasurementRecord(j, seq, len(support) == 1, k)

    def _reduce(self, rows):
        """Unimodular row reduction to at most 2n generators of the same group."""
        remaining = [(int(f) % self.dp, v % self.dp) for f, v in rows]
        kept = []
        for c in range(2 * self.n):
            nxt = []
            pivot = None
            for row in remaining:
                if not row[1][c] % self.dp:
                    nxt.append(row)
                elif pivot is None:
                    pivot = row
                else:
                    alpha, beta = int(pivot[1][c]), int(row[1][c])
                    g, x, y = _ext_gcd(alpha, beta)
                    new_pivot = weyl_mul(*weyl_pow(*pivot, x, self.dimension),
                                         *weyl_pow(*row, y, self.dimension),
                                         self.dimension)
                    new_row = weyl_mul(*weyl_pow(*pivot, -(beta // g), self.dimension),
                                       *weyl_pow(*row, alpha // g, self.dimension),
                                       self.dimension)
                    pivot = new_pivot
                    nxt.append(new_row)
            remaining = nxt
            if pivot is not None:
                kept.append(pivot)
        for f, v in remaining:
            assert not v.any() and f % self.dp == 0, \
                "reduction produced a nontrivial phase times identity"
        return kept

    def _set_rows(self, rows) -> None:
        self.coords = np.array([v for _, v in rows], dtype=np.int64).reshape(
            len(rows), 2 * self.n)
        self.phases = np.array([f for f, _ in rows], dtype=np.int64)

    def reset(self, j: int, rng: np.random.Generator) -> None:
        """Measure qudit j and shift it back to |0> with an X correction."""
        rec = self.measure_z(j, rng)
        self.measurements_done -= 1  # resets do not occupy a record slot
        if rec.outcome:
            self.apply_pauli_error(j, (-rec.outcome) % self.d, 0)
