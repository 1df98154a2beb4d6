"""Stabilizer tableau simulation for odd prime qudit dimensions.

The tableau holds 2n Pauli rows over Z_d: rows 0..n-1 are destabilizers,
rows n..2n-1 are stabilizers.  A fresh register starts as destabilizer X_j
and stabilizer Z_j for each qudit j.  Gates act as column updates on the
X-block, Z-block and phase vector; measurement uses the destabilizer block
to avoid searching the full group.

Row pairing invariant: the commutation exponent of stabilizer i with
destabilizer k is lam[k] * delta_ik with lam[k] != 0.  The lam vector starts
at all ones and only changes when a measurement swaps an unnormalized pivot
row into the destabilizer block; the deterministic-measurement exponents
divide by lam to compensate.

Elementary-operation counters are kept per gate and per measurement so the
asymptotic costs (linear per gate, quadratic per measurement, independent of
d) can be checked directly.
"""

from __future__ import annotations

import numpy as np

from .circuit import MeasurementRecord
from .errors import DimensionError, ShapeError
from .pauli import Dimension, PauliString, _as_dimension

_CANONICAL = {"H": "F", "H_INV": "F_INV", "CNOT": "SUM", "CNOT_INV": "SUM_INV"}
_SINGLE = ("X", "X_INV", "Z", "Z_INV", "F", "F_INV", "P", "P_INV")


def _rref_solve_mod_prime(a: np.ndarray, b: np.ndarray, p: int):
    """One solution of a @ u = b (mod prime p), or None if inconsistent."""
    a = np.array(a, dtype=np.int64) % p
    b = np.array(b, dtype=np.int64) % p
    rows, cols = a.shape
    aug = np.hstack([a, b.reshape(-1, 1)])
    pivot_cols = []
    rank = 0
    for c in range(cols):
        sub = np.flatnonzero(aug[rank:, c])
        if len(sub) == 0:
            continue
        r = rank + int(sub[0])
        aug[[rank, r]] = aug[[r, rank]]
        aug[rank] = (aug[rank] * pow(int(aug[rank, c]), -1, p)) % p
        others = np.flatnonzero(aug[:, c])
        others = others[others != rank]
        if len(others):
            aug[others] = (aug[others] - np.outer(aug[others, c], aug[rank])) % p
        pivot_cols.append(c)
        rank += 1
        if rank == rows:
            break
    if np.any(aug[rank:, cols]):
        return None
    u = np.zeros(cols, dtype=np.int64)
    for r, c in enumerate(pivot_cols):
        u[c] = aug[r, cols]
    return u


class Tableau:
    """Destabilizer/stabilizer tableau for n qudits of odd prime dimension d."""

    def __init__(self, n: int, d):
        dim = _as_dimension(d)
        if not dim.is_odd_prime:
            raise DimensionError(
                f"tableau backend requires an odd prime dimension, got d={dim.d}")
        if n < 1:
            raise ShapeError(f"need at least 1 qudit, got n={n}")
        self.dimension = dim
        self.d = dim.d
        self.n = n
        self.X = np.zeros((2 * n, n), dtype=np.int64)
        self.Z = np.zeros((2 * n, n), dtype=np.int64)
        self.r = np.zeros(2 * n, dtype=np.int64)
        for j in range(n):
            self.X[j, j] = 1
            self.Z[n + j, j] = 1
        self.lam = np.ones(n, dtype=np.int64)
        self.measurements_done = 0
        self.gate_op_log: list[int] = []
        self.measure_op_log: list[int] = []

    @classmethod
    def from_stabilizers(cls, stabilizers) -> "Tableau":
        """Tableau for the joint +1-ish eigenstate of n given stabilizer rows.

        The rows must be independent and mutually commuting; phases are kept
        as given.  Destabilizers are completed by solving the symplectic
        pairing conditions over F_d, so lam starts at all ones.
        """
        stabs = list(stabilizers)
        if not stabs:
            raise ShapeError("need at least one stabilizer")
        n = stabs[0].n
        dim = stabs[0].dimension
        d = dim.d
        if len(stabs) != n:
            raise ShapeError(f"need exactly n={n} stabilizers, got {len(stabs)}")
        for s in stabs:
            if s.n != n or s.dimension.d != d:
                raise ShapeError("stabilizers disagree on qudit count or dimension")
        for i, s in enumerate(stabs):
            for t in stabs[i + 1:]:
                if not s.commutes(t):
                    raise ShapeError(f"stabilizers do not commute: {s} vs {t}")

        tab = cls(n, dim)
        for i, s in enumerate(stabs):
            tab.X[n + i] = s.x
            tab.Z[n + i] = s.z
            tab.r[n + i] = s.r

        # Destabilizer i solves c(S_k, u) = delta_ki and c(D_m, u) = 0 for
        # m < i, where c((x,z),(x',z')) = z.x' - x.z' is the symplectic form.
        constraint_rows = [np.concatenate([tab.Z[n + k], (-tab.X[n + k]) % d])
                           for k in range(n)]
        for i in range(n):
            a = np.array(constraint_rows, dtype=np.int64)
            b = np.zeros(len(constraint_rows), dtype=np.int64)
            b[i] = 1
            u = _rref_solve_mod_prime(a, b, d)
            if u is None:
                raise ShapeError("stabilizer rows are not independent")
            tab.X[i] = u[:n] % d
            tab.Z[i] = u[n:] % d
            tab.r[i] = 0
            constraint_rows.append(np.concatenate([tab.Z[i], (-tab.X[i]) % d]))
        tab.check_invariants()
        return tab

    def copy(self) -> "Tableau":
        out = Tableau.__new__(Tableau)
        out.dimension = self.dimension
        out.d = self.d
        out.n = self.n
        out.X = self.X.copy()
        out.Z = self.Z.copy()
        out.r = self.r.copy()
        out.lam = self.lam.copy()
        out.measurements_done = self.measurements_done
        out.gate_op_log = list(self.gate_op_log)
        out.measure_op_log = list(self.measure_op_log)
        return out

    # -- row access ----------------------------------------------------------

    def destabilizer(self, k: int) -> PauliString:
        return PauliString(self.dimension, self.X[k], self.Z[k], int(self.r[k]))

    def stabilizer(self, i: int) -> PauliString:
        return PauliString(self.dimension, self.X[self.n + i], self.Z[self.n + i],
                           int(self.r[self.n + i]))

    def to_array(self) -> np.ndarray:
        """Block matrix [X | Z | r] of shape (2n, 2n+1)."""
        return np.hstack([self.X, self.Z, self.r.reshape(-1, 1)]).astype(np.int64)

    def check_invariants(self) -> None:
        """Raise if the pairing or commutation structure is broken."""
        d, n = self.d, self.n
        sx, sz = self.X[n:], self.Z[n:]
        comm = (sz @ sx.T - sx @ sz.T) % d
        if np.any(comm):
            raise ShapeError("stabilizer rows do not mutually commute")
        dx, dz = self.X[:n], self.Z[:n]
        comm = (dz @ dx.T - dx @ dz.T) % d
        if np.any(comm):
            raise ShapeError("destabilizer rows do not mutually commute")
        pair = (sz @ dx.T - sx @ dz.T) % d
        expect = np.diag(self.lam % d)
        if np.any(pair != expect) or np.any(self.lam % d == 0):
            raise ShapeError("stabilizer/destabilizer pairing is broken")

    # -- gates -----------------------------------------------------------------

    def apply_gate(self, name: str, *qudits: int) -> None:
        name = _CANONICAL.get(name, name)
        d, n = self.d, self.n
        X, Z, r = self.X, self.Z, self.r
        for q in qudits:
            if not 0 <= q < n:
                raise ShapeError(f"qudit index {q} out of range for n={n}")
        if name in _SINGLE:
            if len(qudits) != 1:
                raise ShapeError(f"{name} takes 1 qudit, got {len(qudits)}")
            (j,) = qudits
            xj = X[:, j].copy()
            zj = Z[:, j].copy()
            if name == "F":
                r[:] = (r - xj * zj) % d
                X[:, j] = (-zj) % d
                Z[:, j] = xj
            elif name == "F_INV":
                r[:] = (r - xj * zj) % d
                X[:, j] = zj
                Z[:, j] = (-xj) % d
            elif name == "P":
                r[:] = (r + (xj * (xj - 1)) // 2) % d
                Z[:, j] = (zj + xj) % d
            elif name == "P_INV":
                r[:] = (r - (xj * (xj - 1)) // 2) % d
                Z[:, j] = (zj - xj) % d
            elif name == "X":
                r[:] = (r - zj) % d
            elif name == "X_INV":
                r[:] = (r + zj) % d
            elif name == "Z":
                r[:] = (r + xj) % d
            else:
                r[:] = (r - xj) % d
            self.gate_op_log.append(2 * n)
        elif name in ("SUM", "SUM_INV"):
            if len(qudits) != 2 or qudits[0] == qudits[1]:
                raise ShapeError(f"{name} takes 2 distinct qudits, got {qudits}")
            c, t = qudits
            s = 1 if name == "SUM" else -1
            X[:, t] = (X[:, t] + s * X[:, c]) % d
            Z[:, c] = (Z[:, c] - s * Z[:, t]) % d
            self.gate_op_log.append(4 * n)
        else:
            raise ShapeError(f"unknown gate name {name!r}")

    def apply_pauli(self, p: PauliString) -> None:
        """Conjugate every row by a Pauli string (phase-only update)."""
        if p.n != self.n or p.dimension.d != self.d:
            raise ShapeError("Pauli string does not match tableau shape")
        self.r = (self.r + self.X @ p.z - self.Z @ p.x) % self.d

    def apply_pauli_error(self, j: int, a: int, b: int) -> None:
        """Conjugate every row by X^a Z^b on qudit j."""
        self.r = (self.r + b * self.X[:, j] - a * self.Z[:, j]) % self.d

    # -- measurement -----------------------------------------------------------

    def measure_z(self, j: int, rng: np.random.Generator,
                  fast_deterministic: bool = False) -> MeasurementRecord:
        """Z-basis measurement of qudit j; outcome k collapses onto w^(-k) Z_j.

        The outcome is the eigenvalue exponent: the post-measurement state is
        stabilized by w^(-k) Z_j, so Z_j has eigenvalue w^k, matching dense
        Born sampling.

        fast_deterministic replaces the phase-tracked deterministic product
        with a linear-time phase sum that is only valid while every lam entry
        is 1; it is off by default because measurements leave lam entries
        equal to the pivot's X exponent, which need not be 1.
        """
        d, n = self.d, self.n
        if not 0 <= j < n:
            raise ShapeError(f"qudit index {j} out of range for n={n}")
        seq = self.measurements_done
        self.measurements_done += 1
        stab_col = self.X[n:, j]
        hits = np.flatnonzero(stab_col)
        if len(hits):
            p = n + int(hits[0])
            k = int(rng.integers(d))
            ops = 2 * n
            ops += self._eliminate_column(j, p) * (2 * n + 1)
            self.lam[p - n] = int(self.X[p, j])
            self.X[p - n] = self.X[p]
            self.Z[p - n] = self.Z[p]
            self.r[p - n] = self.r[p]
            self.X[p] = 0
            self.Z[p] = 0
            self.Z[p, j] = 1
            self.r[p] = (-k) % d
            ops += 2 * (2 * n + 1) + 1
            self.measure_op_log.append(ops)
            return MeasurementRecord(j, seq, False, k)

        if fast_deterministic:
            outcome = int(-(self.X[:n, j] @ self.r[n:])) % d
            self.measure_op_log.append(3 * n)
            return MeasurementRecord(j, seq, True, outcome)

        # lam[k]^(d-2) is the inverse mod prime d.
        lam_inv = np.array([pow(int(v), -1, d) for v in self.lam], dtype=np.int64)
        y = (self.X[:n, j] * lam_inv) % d
        px = np.zeros(n, dtype=np.int64)
        pz = np.zeros(n, dtype=np.int64)
        pr = 0
        for k in range(n):
            h = int(y[k])
            sx, sz = self.X[n + k], self.Z[n + k]
            hr = (h * int(self.r[n + k]) + (h * (h - 1) // 2) * int(sx @ sz)) % d
            pr = (pr + hr + h * int(pz @ sx)) % d
            px = (px + h * sx) % d
            pz = (pz + h * sz) % d
        assert not px.any() and pz[j] == 1 and pz.sum() == 1, \
            "deterministic measurement product is not the bare Z on the target"
        self.measure_op_log.append(2 * n + n + n * (2 * n + 1))
        return MeasurementRecord(j, seq, True, (-pr) % d)

    def deterministic_outcome_gaussian(self, j: int):
        """Branch decision and outcome by direct linear solving; never mutates.

        Solves for exponents y with prod_i stabilizer_i^y_i = w^c Z_j over
        F_d.  Returns (True, outcome) when a solution exists, with the
        outcome read from the phase of the explicitly multiplied product,
        or (False, None) when Z_j is not in the stabilizer group and the
        measurement would be random.  Serves as an independent check of
        measure_z's pivot scan and phase accumulation.
        """
        d, n = self.d, self.n
        if not 0 <= j < n:
            raise ShapeError(f"qudit index {j} out of range for n={n}")
        a = np.hstack([self.X[n:], self.Z[n:]]).T  # (2n, n): column i = generator i
        b = np.zeros(2 * n, dtype=np.int64)
        b[n + j] = 1
        y = _rref_solve_mod_prime(a, b, d)
        if y is None:
            return False, None
        prod = PauliString.identity(n, self.dimension)
        for i in range(n):
            prod = prod * self.stabilizer(i).pow(int(y[i]))
        assert not prod.x.any() and prod.z[j] == 1 and prod.z.sum() == 1
        return True, (-prod.r) % d

    def _eliminate_column(self, j: int, p: int) -> int:
        """Clear column j of X in all rows except pivot p; returns rows touched."""
        d = self.d
        col = self.X[:, j]
        rows = np.flatnonzero(col)
        rows = rows[rows != p]
        if not len(rows):
            return 0
        xp = self.X[p].copy()
        zp = self.Z[p].copy()
        rp = int(self.r[p])
        inv = pow(int(col[p]), -1, d)
        h = (-(col[rows]) * inv) % d
        quad = (h * (h - 1) // 2) * int(xp @ zp)
        cross = h * (self.Z[rows] @ xp)
        self.r[rows] = (self.r[rows] + h * rp + quad + cross) % d
        self.X[rows] = (self.X[rows] + h[:, None] * xp) % d
        self.Z[rows] = (self.Z[rows] + h[:, None] * zp) % d
        return int(len(rows))

    def reset(self, j: int, rng: np.random.Generator) -> None:
        """Measure qudit j and shift it back to |0> with an X correction."""
        rec = self.measure_z(j, rng)
        self.measurements_done -= 1  # resets do not occupy a record slot
        if rec.outcome:
            self.apply_pauli_error(j, (-rec.outcome) % self.d, 0)
