"""Validation and benchmarking procedures built on the simulators.

Four groups of tools:

- outcome distributions and total variation distance, with a backend
  cross-validation harness that compares per-measurement marginals;
- single-qudit noise channel distribution tests against closed-form
  references;
- randomized benchmarking on one qudit: random generator-set Clifford
  sequences, noiseless inversion, omega-weighted fidelity, and a log-linear
  decay fit;
- a five-qutrit distance-2 detection code with syndrome-extraction gadgets
  and a logical benchmarking variant that postselects on clean syndromes.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .circuit import Circuit, MeasurementRecord
from .errors import DimensionError, ShapeError, SupportMismatchError
from .frames import FrameSimulator
from .pauli import Dimension, PauliString, _as_dimension
from .simulate import run_circuit
from .tableau import Tableau

_SINGLE_GATES = ("X", "X_INV", "Z", "Z_INV", "F", "F_INV", "P", "P_INV")
_INVERSE_GATE = {"X": "X_INV", "X_INV": "X", "Z": "Z_INV", "Z_INV": "Z",
                 "F": "F_INV", "F_INV": "F", "P": "P_INV", "P_INV": "P"}


# -- distributions and TVD -----------------------------------------------------

@dataclass(frozen=True)
class OutcomeDistribution:
    """Probabilities per outcome label (ints) or per outcome tuple."""

    d: int
    probs: dict

    def __post_init__(self):
        total = 0.0
        for label, p in self.probs.items():
            if p < -1e-12:
                raise ShapeError(f"negative probability {p} at label {label!r}")
            total += p
        if self.probs and abs(total - 1.0) > 1e-9:
            raise ShapeError(f"probabilities sum to {total}, not 1")

    @classmethod
    def from_counts(cls, counts: dict, d: int) -> "OutcomeDistribution":
        total = sum(counts.values())
        if total <= 0:
            raise ShapeError("counts are empty")
        return cls(d, {k: v / total for k, v in counts.items() if v})

    @classmethod
    def from_outcomes(cls, outcomes, d: int) -> "OutcomeDistribution":
        counts = {}
        for k in outcomes:
            key = int(k) if not isinstance(k, tuple) else k
            counts[key] = counts.get(key, 0) + 1
        return cls.from_counts(counts, d)

    def prob(self, label) -> float:
        return self.probs.get(label, 0.0)


def _label_formats(dist: OutcomeDistribution) -> set:
    kinds = set()
    for label in dist.probs:
        if isinstance(label, tuple):
            kinds.add(("tuple", len(label)))
        elif isinstance(label, (int, np.integer)):
            kinds.add(("scalar",))
        else:
            raise SupportMismatchError(f"unsupported label type {type(label)!r}")
    return kinds


def tvd(p: OutcomeDistribution, q: OutcomeDistribution) -> float:
    """Total variation distance: half the L1 difference over the label union."""
    if p.d != q.d:
        raise SupportMismatchError(f"dimension mismatch: {p.d} vs {q.d}")
    fp, fq = _label_formats(p), _label_formats(q)
    if fp and fq and fp != fq:
        raise SupportMismatchError(f"label formats differ: {fp} vs {fq}")
    labels = set(p.probs) | set(q.probs)
    return 0.5 * sum(abs(p.prob(k) - q.prob(k)) for k in labels)


def per_slot_distributions(records, d: int) -> list:
    """One empirical OutcomeDistribution per measurement slot."""
    if not records:
        return []
    num_slots = len(records[0])
    outs = np.empty((len(records), num_slots), dtype=np.int64)
    for s, shot in enumerate(records):
        for i, r in enumerate(shot):
            outs[s, i] = r.outcome if isinstance(r, MeasurementRecord) else int(r)
    return [OutcomeDistribution.from_outcomes(outs[:, i], d)
            for i in range(num_slots)]


def max_slot_tvd(records_a, records_b, d: int) -> float:
    """Largest per-slot TVD between two record sets of the same shape."""
    da = per_slot_distributions(records_a, d)
    db = per_slot_distributions(records_b, d)
    if len(da) != len(db):
        raise SupportMismatchError(
            f"record shapes differ: {len(da)} vs {len(db)} slots")
    return max((tvd(a, b) for a, b in zip(da, db)), default=0.0)


def mean_slot_tvd(records_a, records_b, d: int) -> float:
    """Mean per-slot TVD between two record sets of the same shape."""
    da = per_slot_distributions(records_a, d)
    db = per_slot_distributions(records_b, d)
    if len(da) != len(db):
        raise SupportMismatchError(
            f"record shapes differ: {len(da)} vs {len(db)} slots")
    scores = [tvd(a, b) for a, b in zip(da, db)]
    return float(np.mean(scores)) if scores else 0.0


def validate_backend_pair(circuits, method_a: str, method_b: str, shots: int,
                          threshold: float, seed=None, threads: int = None,
                          csv_path=None) -> dict:
    """Compare two backends on a circuit corpus by per-slot marginal TVD.

    Each circuit is sampled once per backend with independent derived seeds;
    its score is the mean TVD across measurement slots, compared against the
    threshold.  The mean is used rather than the max because at finite shot
    budgets the max over many uniform slots sits on the sampling noise floor
    even for identical distributions, while any real propagation bug corrupts
    most slots and moves the mean far above any plausible threshold.
    """
    ss = np.random.SeedSequence(seed)
    children = ss.spawn(2 * len(circuits))
    rows = []
    for i, circuit in enumerate(circuits):
        res_a = run_circuit(circuit, shots, children[2 * i], method_a,
                            threads=threads)
        res_b = run_circuit(circuit, shots, children[2 * i + 1], method_b,
                            threads=threads)
        score = mean_slot_tvd(res_a.records, res_b.records,
                              circuit.dimension.d)
        rows.append({
            "index": i,
            "family": circuit.metadata.get("family", ""),
            "dimension": circuit.dimension.d,
            "qudits": circuit.num_qudits,
            "tvd": score,
            "passed": bool(score < threshold),
        })
    report = {
        "method_a": method_a,
        "method_b": method_b,
        "shots": shots,
        "threshold": threshold,
        "circuits": len(circuits),
        "per_circuit": rows,
        "max_tvd": max((r["tvd"] for r in rows), default=0.0),
        "all_passed": all(r["passed"] for r in rows),
    }
    if csv_path:
        with open(csv_path, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(rows[0]) if rows else
                                    ["index", "family", "dimension", "qudits",
                                     "tvd", "passed"])
            writer.writeheader()
            writer.writerows(rows)
    return report


# -- channel distribution tests ------------------------------------------------

_KIND_ALIASES = {"flip": "f", "phase": "p", "depolarizing": "d",
                 "f": "f", "p": "p", "d": "d"}


def channel_reference_distribution(kind: str, d: int, p: float) -> OutcomeDistribution:
    """Closed-form outcome distribution for one channel event on |0>."""
    kind = _KIND_ALIASES[kind]
    if kind == "d":
        q0 = (1 - p) + (d - 1) * p / (d * d - 1)
        qk = d * p / (d * d - 1)
    else:
        q0 = 1 - p
        qk = p / (d - 1)
    probs = {0: q0}
    for k in range(1, d):
        probs[k] = qk
    return OutcomeDistribution(d, probs)


def build_channel_test_circuit(kind: str, d, p: float) -> Circuit:
    """One channel event on |0>, read out in the basis where it shows."""
    kind = _KIND_ALIASES[kind]
    circuit = Circuit(1, d)
    if kind == "p":
        # a phase kick is invisible to Z readout; conjugate into the X basis
        circuit.add_gate("F", 0)
        circuit.add_gate("N1", 0, noise_channel=kind, prob=p)
        circuit.add_gate("F_INV", 0)
    else:
        circuit.add_gate("N1", 0, noise_channel=kind, prob=p)
    circuit.add_gate("M", 0)
    return circuit


def channel_distribution_test(kind: str, d, p: float, shots: int, seed=None,
                              method: str = "tableau",
                              threshold: float = 0.02) -> dict:
    """Empirical channel outcome distribution versus its closed form."""
    dim = _as_dimension(d)
    circuit = build_channel_test_circuit(kind, dim, p)
    result = run_circuit(circuit, shots, seed, method)
    empirical = per_slot_distributions(result.records, dim.d)[0]
    reference = channel_reference_distribution(kind, dim.d, p)
    score = tvd(empirical, reference)
    return {
        "kind": _KIND_ALIASES[kind],
        "dimension": dim.d,
        "prob": p,
        "shots": shots,
        "method": method,
        "empirical": {k: empirical.prob(k) for k in range(dim.d)},
        "reference": {k: reference.prob(k) for k in range(dim.d)},
        "tvd": score,
        "threshold": threshold,
        "passed": bool(score < threshold),
    }


# -- randomized benchmarking ---------------------------------------------------

@dataclass(frozen=True)
class RBConfig:
    """Single-qudit benchmarking run: depths, corpus size, shots, error rate."""

    d: int
    depths: tuple
    circuits_per_depth: int
    shots: int
    p: float

    def __post_init__(self):
        if any(int(D) < 0 for D in self.depths):
            raise ShapeError("depths must be nonnegative")
        if self.shots < 1:
            raise ShapeError("shots must be >= 1")
        if not 0.0 <= self.p <= 1.0:
            raise ShapeError("p must lie in [0, 1]")
        object.__setattr__(self, "depths", tuple(int(D) for D in self.depths))


def rb_fidelity(dist: OutcomeDistribution) -> float:
    """Modulus of the omega-weighted outcome sum, in [0, 1]."""
    omega = np.exp(2j * np.pi / dist.d)
    total = 0j
    for label, p in dist.probs.items():
        if not isinstance(label, (int, np.integer)) or not 0 <= label < dist.d:
            raise ShapeError(f"labels must lie in 0..{dist.d - 1}, got {label!r}")
        total += p * omega ** int(label)
    return float(min(abs(total), 1.0))


def build_rb_circuit(d, depth: int, p: float, rng: np.random.Generator) -> Circuit:
    """depth random generator gates with a channel event after each, the
    noiseless reversed-inverse block, one more channel event, and a readout."""
    circuit = Circuit(1, d)
    names = [str(g) for g in rng.choice(_SINGLE_GATES, size=int(depth))]
    for name in names:
        circuit.add_gate(name, 0)
        circuit.add_gate("N1", 0, noise_channel="d", prob=p)
    for name in reversed(names):
        circuit.add_gate(_INVERSE_GATE[name], 0)
    circuit.add_gate("N1", 0, noise_channel="d", prob=p)
    circuit.add_gate("M", 0)
    circuit.metadata["family"] = f"rb_d{_as_dimension(d).d}_depth{depth}"
    return circuit


def _fit_decay(depths, means):
    """Log-linear least squares of f(D) = B * alpha^D on positive means."""
    usable = [(D, m) for D, m in zip(depths, means)
              if m is not None and m > 1e-3]
    if len(usable) < 2:
        return {"ok": False, "alpha": None, "B": None,
                "reason": f"only {len(usable)} usable depths"}
    xs = np.array([D for D, _ in usable], dtype=float)
    ys = np.log(np.array([m for _, m in usable], dtype=float))
    slope, intercept = np.polyfit(xs, ys, 1)
    return {"ok": True, "alpha": float(np.exp(slope)),
            "B": float(np.exp(intercept)), "reason": ""}


def _write_depth_csv(path, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["depth", "mean_fidelity", "stderr", "survivor_fraction"])
        for row in rows:
            writer.writerow([
                row["depth"],
                "" if row["mean_fidelity"] is None else f"{row['mean_fidelity']:.10f}",
                "" if row["stderr"] is None else f"{row['stderr']:.10f}",
                f"{row['survivor_fraction']:.10f}",
            ])


def _write_manifest(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def run_rb(cfg: RBConfig, seed=None, method: str = "frames",
           threads: int = None, csv_path=None, manifest_path=None) -> dict:
    """Mean fidelity per depth plus a decay fit f(D) = B * alpha^D."""
    ss = np.random.SeedSequence(seed)
    per_depth = []
    for depth in cfg.depths:
        fidelities = []
        for _ in range(cfg.circuits_per_depth):
            build_child, run_child = ss.spawn(2)
            rng = np.random.Generator(np.random.PCG64(build_child))
            circuit = build_rb_circuit(cfg.d, depth, cfg.p, rng)
            result = run_circuit(circuit, cfg.shots, run_child, method,
                                 threads=threads)
            dist = per_slot_distributions(result.records, cfg.d)[0]
            fidelities.append(rb_fidelity(dist))
        arr = np.array(fidelities)
        per_depth.append({
            "depth": depth,
            "mean_fidelity": float(arr.mean()),
            "stderr": float(arr.std(ddof=1) / math.sqrt(len(arr)))
            if len(arr) > 1 else 0.0,
            "survivor_fraction": 1.0,
            "fidelities": [float(f) for f in arr],
        })
    fit = _fit_decay([row["depth"] for row in per_depth],
                     [row["mean_fidelity"] for row in per_depth])
    report = {
        "experiment": "rb",
        "config": asdict(cfg),
        "seed": seed,
        "method": method,
        "per_depth": per_depth,
        "alpha": fit["alpha"],
        "B": fit["B"],
        "fit_ok": fit["ok"],
        "fit_reason": fit["reason"],
    }
    if csv_path:
        _write_depth_csv(csv_path, per_depth)
    if manifest_path:
        _write_manifest(manifest_path, {k: v for k, v in report.items()})
    return report


# -- detection code ------------------------------------------------------------

def _rref_mod_prime(rows, p):
    """Reduced row echelon form mod prime p; returns (matrix, pivot columns)."""
    mat = [[int(x) % p for x in row] for row in rows]
    pivots = []
    r = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        sel = next((i for i in range(r, len(mat)) if mat[i][c] % p), None)
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        inv = pow(mat[r][c], -1, p)
        mat[r] = [(x * inv) % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def _kernel_basis_mod_prime(rows, p, ncols):
    if not rows:
        return [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    mat, pivots = _rref_mod_prime(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for r, c in enumerate(pivots):
            vec[c] = (-mat[r][f]) % p
        basis.append(vec)
    return basis


def _rank_mod_prime(rows, p):
    return len(_rref_mod_prime(rows, p)[1]) if rows else 0


def _in_span_mod_prime(rows, vec, p):
    return _rank_mod_prime(rows + [vec], p) == _rank_mod_prime(rows, p)


@dataclass(frozen=True)
class DetectionCode:
    """A stabilizer detection code on n data qudits with one logical qudit."""

    n: int
    d: int
    stabilizers: tuple
    logical_x: PauliString
    logical_z: PauliString

    def __post_init__(self):
        for i, gi in enumerate(self.stabilizers):
            for gj in self.stabilizers[i + 1:]:
                c = gi.commutation_exponent(gj)
                if c != 0:
                    raise ShapeError(f"stabilizers do not commute (exponent {c})")
            if self.logical_x.commutation_exponent(gi) != 0 or \
               self.logical_z.commutation_exponent(gi) != 0:
                raise ShapeError("logical operators must commute with stabilizers")
        if self.logical_x.commutation_exponent(self.logical_z) % self.d != 1:
            raise ShapeError("logical pair must satisfy c(Lx, Lz) = 1")

    def logical_z_powers(self) -> np.ndarray:
        return self.logical_z.z.copy()


def qutrit_detection_code() -> DetectionCode:
    """Five-qutrit distance-2 detection code: two Z-type and two X-type
    stabilizers (data qudits indexed 0..4) and the induced logical pair.

    Logical operators are derived from the generators by symplectic
    elimination with a fixed pivot order: the logical Z is the first kernel
    vector of the X-type generator matrix that is independent of the Z-type
    generators, and vice versa, scaled so c(Lx, Lz) = 1.
    """
    d = 3
    dim = Dimension(d)
    z_rows = [[1, -1, 0, -1, 0], [0, 1, 1, 0, -1]]
    x_rows = [[1, 1, -1, 0, 0], [0, -1, 0, 1, -1]]

    def z_string(z):
        return PauliString(dim, np.zeros(5, dtype=np.int64),
                           np.array(z, dtype=np.int64) % d)

    def x_string(x):
        return PauliString(dim, np.array(x, dtype=np.int64) % d,
                           np.zeros(5, dtype=np.int64))

    stabilizers = (z_string(z_rows[0]), z_string(z_rows[1]),
                   x_string(x_rows[0]), x_string(x_rows[1]))

    z_cands = [v for v in _kernel_basis_mod_prime(x_rows, d, 5)
               if not _in_span_mod_prime(z_rows, v, d)]
    x_cands = [v for v in _kernel_basis_mod_prime(z_rows, d, 5)
               if not _in_span_mod_prime(x_rows, v, d)]
    for u in x_cands:
        for w in z_cands:
            lx, lz = x_string(u), z_string(w)
            c = lx.commutation_exponent(lz) % d
            if c:
                lx = lx.pow(pow(c, -1, d))
                return DetectionCode(5, d, stabilizers, lx, lz)
    raise ShapeError("no symplectic logical pair found")  # pragma: no cover


def _conjugate_single(name: str, r: int, x: int, z: int, d: int):
    """Image of omega^r X^x Z^z under conjugation by one generator gate."""
    if name == "F":
        return (r - x * z) % d, (-z) % d, x % d
    if name == "F_INV":
        return (r - x * z) % d, z % d, (-x) % d
    if name == "P":
        return (r + (x * (x - 1)) // 2) % d, x % d, (z + x) % d
    if name == "P_INV":
        return (r - (x * (x - 1)) // 2) % d, x % d, (z - x) % d
    if name == "X":
        return (r - z) % d, x % d, z % d
    if name == "X_INV":
        return (r + z) % d, x % d, z % d
    if name == "Z":
        return (r + x) % d, x % d, z % d
    if name == "Z_INV":
        return (r - x) % d, x % d, z % d
    raise ShapeError(f"unknown gate name {name!r}")


_V_WORD_CACHE = {}


def _v_word(d: int, a: int, b: int) -> tuple:
    """Shortest gate word V (instruction order) with V X V^dagger = X^a Z^b,
    phase exponent exactly zero."""
    a, b = a % d, b % d
    if (a, b) == (0, 0):
        raise ShapeError("identity factor has no conjugating word")
    key = (d, a, b)
    if key in _V_WORD_CACHE:
        return _V_WORD_CACHE[key]
    start = (0, 1, 0)
    seen = {start: ()}
    frontier = [start]
    target = None
    while frontier and target is None:
        nxt = []
        for state in frontier:
            for gate in _SINGLE_GATES:
                new = _conjugate_single(gate, *state, d)
                if new in seen:
                    continue
                seen[new] = seen[state] + (gate,)
                if new[1] == a and new[2] == b:
                    target = new
                    break
                nxt.append(new)
            if target is not None:
                break
        frontier = nxt
    if target is None:
        raise ShapeError(f"factor X^{a} Z^{b} not reachable for d={d}")
    word = list(seen[target])
    r = target[0]
    if r:
        # cancel the leftover phase with appended X or Z powers
        if b:
            s = (r * pow(b, -1, d)) % d
            word.extend(["X"] * s)
        else:
            t = (-r * pow(a, -1, d)) % d
            word.extend(["Z"] * t)
    check = (0, 1, 0)
    for gate in word:
        check = _conjugate_single(gate, *check, d)
    assert check == (0, a, b), "phase fix failed"
    _V_WORD_CACHE[key] = tuple(word)
    return tuple(word)


def build_syndrome_gadget(pauli: PauliString, ancilla: int = None) -> Circuit:
    """Non-destructive eigenvalue-exponent readout of a phase-free Pauli.

    The ancilla (default: one fresh qudit appended after the data register)
    is prepared with F, coupled to each non-identity factor by a SUM
    conjugated through the basis change mapping X to that factor, rotated
    back with F_INV, and measured.  On a stabilized input the outcome is 0
    and the data state is untouched.
    """
    dim = pauli.dimension
    if not dim.is_odd_prime:
        raise DimensionError(
            f"syndrome gadgets require an odd prime dimension, got d={dim.d}")
    n = pauli.n
    anc = n if ancilla is None else int(ancilla)
    if anc < n:
        raise ShapeError(f"ancilla index {anc} collides with the data register")
    circuit = Circuit(anc + 1, dim)
    circuit.add_gate("F", anc)
    for q in range(n):
        a, b = int(pauli.x[q]) % dim.d, int(pauli.z[q]) % dim.d
        if a == 0 and b == 0:
            continue
        word = _v_word(dim.d, a, b)
        for gate in reversed(word):
            circuit.add_gate(_INVERSE_GATE[gate], q)
        circuit.add_gate("SUM", anc, q)
        for gate in word:
            circuit.add_gate(gate, q)
    for _ in range(int(pauli.r) % dim.d):
        circuit.add_gate("Z", anc)
    circuit.add_gate("F_INV", anc)
    circuit.add_gate("M", anc)
    circuit.metadata["family"] = f"syndrome_gadget_{pauli}"
    return circuit


# -- logical benchmarking with detection ---------------------------------------

def _pad_pauli(p: PauliString, n: int) -> PauliString:
    x = np.zeros(n, dtype=np.int64)
    z = np.zeros(n, dtype=np.int64)
    x[:p.n] = p.x
    z[:p.n] = p.z
    return PauliString(p.dimension, x, z, int(p.r))


def _pauli_power_gates(circuit: Circuit, qudit: int, gate: str, inv: str,
                       power: int, d: int) -> None:
    power %= d
    if power == 0:
        return
    if power <= d - power:
        for _ in range(power):
            circuit.add_gate(gate, qudit)
    else:
        for _ in range(d - power):
            circuit.add_gate(inv, qudit)


def code_initial_tableau(code: DetectionCode) -> Tableau:
    """Logical |0> of the code, plus one ancilla in |0>, as a tableau."""
    n = code.n + 1
    stabs = [_pad_pauli(g, n) for g in code.stabilizers]
    stabs.append(_pad_pauli(code.logical_z, n))
    anc_z = np.zeros(n, dtype=np.int64)
    anc_z[code.n] = 1
    stabs.append(PauliString(Dimension(code.d), np.zeros(n, dtype=np.int64),
                             anc_z))
    return Tableau.from_stabilizers(stabs)


def build_lrb_d_circuit(code: DetectionCode, depth: int, p: float,
                        rng: np.random.Generator,
                        postselect: str = "all") -> Circuit:
    """Random logical-Pauli layers with per-qudit channel events, the
    noiseless inverse, a final channel round, syndrome gadgets on the chosen
    stabilizer subset (ancilla reset before each), and a data readout."""
    if postselect not in ("all", "x_only"):
        raise ShapeError(f"postselect must be 'all' or 'x_only', got {postselect!r}")
    d = code.d
    n = code.n
    anc = n
    circuit = Circuit(n + 1, d)
    net_a = net_b = 0
    for _ in range(int(depth)):
        a, b = int(rng.integers(d)), int(rng.integers(d))
        net_a = (net_a + a) % d
        net_b = (net_b + b) % d
        for q in range(n):
            _pauli_power_gates(circuit, q, "X", "X_INV",
                               a * int(code.logical_x.x[q]), d)
        for q in range(n):
            _pauli_power_gates(circuit, q, "Z", "Z_INV",
                               b * int(code.logical_z.z[q]), d)
        for q in range(n):
            circuit.add_gate("N1", q, noise_channel="d", prob=p)
    for q in range(n):
        _pauli_power_gates(circuit, q, "X", "X_INV",
                           -net_a * int(code.logical_x.x[q]), d)
    for q in range(n):
        _pauli_power_gates(circuit, q, "Z", "Z_INV",
                           -net_b * int(code.logical_z.z[q]), d)
    for q in range(n):
        circuit.add_gate("N1", q, noise_channel="d", prob=p)
    selected = code.stabilizers if postselect == "all" else code.stabilizers[2:]
    for stab in selected:
        circuit.add_gate("RESET", anc)
        gadget = build_syndrome_gadget(stab, ancilla=anc)
        for ins in gadget.instructions:
            circuit.add_gate(ins.name, *ins.qudits,
                             noise_channel=ins.noise_channel, prob=ins.prob)
    for q in range(n):
        circuit.add_gate("M", q)
    circuit.metadata["family"] = f"lrbd_depth{depth}_{postselect}"
    return circuit


def run_lrb_d(cfg: RBConfig, code: DetectionCode = None, seed=None,
              postselect: str = "all", threads: int = None,
              csv_path=None, manifest_path=None) -> dict:
    """Postselected logical fidelity and survivor fraction per depth.

    Shots whose selected syndromes are all zero survive; each circuit's
    fidelity is computed on the survivors' logical readout (the logical-Z
    weighted sum of data outcomes).  A depth with no surviving shots is
    reported with missing fidelity.
    """
    if code is None:
        code = qutrit_detection_code()
    if cfg.d != code.d:
        raise DimensionError(f"config d={cfg.d} does not match code d={code.d}")
    num_syndromes = 4 if postselect == "all" else 2
    weights = code.logical_z_powers()
    initial = code_initial_tableau(code)
    ss = np.random.SeedSequence(seed)
    per_depth = []
    for depth in cfg.depths:
        fidelities = []
        fractions = []
        for _ in range(cfg.circuits_per_depth):
            build_child, run_child = ss.spawn(2)
            rng = np.random.Generator(np.random.PCG64(build_child))
            circuit = build_lrb_d_circuit(code, depth, cfg.p, rng, postselect)
            sim = FrameSimulator(circuit, run_child, initial_tableau=initial)
            matrix = sim.run(cfg.shots, threads)
            syndromes = matrix[:, :num_syndromes]
            survivors = matrix[np.all(syndromes == 0, axis=1), num_syndromes:]
            fractions.append(survivors.shape[0] / cfg.shots)
            if survivors.shape[0] == 0:
                continue
            logical = (survivors @ weights) % code.d
            dist = OutcomeDistribution.from_outcomes(logical, code.d)
            fidelities.append(rb_fidelity(dist))
        arr = np.array(fidelities)
        per_depth.append({
            "depth": depth,
            "mean_fidelity": float(arr.mean()) if len(arr) else None,
            "stderr": float(arr.std(ddof=1) / math.sqrt(len(arr)))
            if len(arr) > 1 else (0.0 if len(arr) else None),
            "survivor_fraction": float(np.mean(fractions)),
            "surviving_circuits": int(len(arr)),
        })
    report = {
        "experiment": "lrbd",
        "config": asdict(cfg),
        "seed": seed,
        "postselect": postselect,
        "per_depth": per_depth,
    }
    if csv_path:
        _write_depth_csv(csv_path, per_depth)
    if manifest_path:
        _write_manifest(manifest_path, report)
    return report
