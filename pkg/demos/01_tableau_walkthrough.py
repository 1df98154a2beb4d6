"""Step through tableau updates for a two-qutrit circuit, gate by gate.

Shows the block form [x | z | r] of every destabilizer/stabilizer row after
each gate, then walks the measurement rules on a GHZ pair: the first
measurement is random and rewrites the tableau, the second is deterministic
and always agrees with the first.
"""

import numpy as np

from quditsim import Tableau


def show(tab: Tableau, label: str) -> None:
    arr = tab.to_array()
    n = tab.n
    print(f"\n{label}")
    for i, row in enumerate(arr):
        x, z, r = row[:n], row[n:2 * n], row[2 * n]
        if i < n:
            kind, pauli = "destab", tab.destabilizer(i)
        else:
            kind, pauli = "stab  ", tab.stabilizer(i - n)
        print(f"  {kind} {i % n}:  x={x}  z={z}  r={r}   {pauli}")


def main() -> None:
    tab = Tableau(2, 3)
    show(tab, "initial |00> tableau")
    for name, qudit in (("F", 0), ("X", 1), ("F", 1)):
        tab.apply_gate(name, qudit)
        show(tab, f"after {name} {qudit}")

    print("\n--- GHZ pair measurement ---")
    rng = np.random.default_rng(7)
    ghz = Tableau(2, 3)
    ghz.apply_gate("F", 0)
    ghz.apply_gate("SUM", 0, 1)
    show(ghz, "GHZ pair (F 0; SUM 0 1)")
    first = ghz.measure_z(1, rng)
    print(f"\nM 1 -> outcome {first.outcome} "
          f"(deterministic={first.deterministic})")
    show(ghz, "after the random measurement")
    second = ghz.measure_z(0, rng)
    print(f"\nM 0 -> outcome {second.outcome} "
          f"(deterministic={second.deterministic}); "
          f"agrees with first: {second.outcome == first.outcome}")


if __name__ == "__main__":
    main()
