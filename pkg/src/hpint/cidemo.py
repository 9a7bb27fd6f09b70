"""Two bosons with a contact interaction in a 1D harmonic trap.

A minimal downstream consumer of the W table: the interaction matrix element
between harmonic-oscillator product states is exactly the four-index integral,
so a configuration-interaction ground-state energy exercises the table end to
end.  Energies are in oscillator units (trap quantum = 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .tables import IntegralTable, w_value


@dataclass(frozen=True)
class PairBasis:
    """Symmetrized two-boson basis: pairs (n, m) with 0 <= n <= m <= M."""

    max_degree: int
    pairs: tuple[tuple[int, int], ...]

    @classmethod
    def build(cls, max_degree: int) -> "PairBasis":
        if max_degree < 0:
            raise ValueError("max_degree must be >= 0")
        pairs = tuple(
            (n, m)
            for n in range(max_degree + 1)
            for m in range(n, max_degree + 1)
        )
        return cls(max_degree=max_degree, pairs=pairs)

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class Hamiltonian:
    """Dense symmetric two-boson Hamiltonian over a pair basis."""

    matrix: np.ndarray
    coupling: float
    basis: PairBasis


def build_hamiltonian(max_degree: int, g: float, w_table: IntegralTable) -> Hamiltonian:
    """Assemble H[(n,m),(p,q)] = (n+m+1) delta + 2 g W[n,m,p,q] / norm.

    The symmetrization norm is sqrt((1 + delta_nm)(1 + delta_pq)).  The
    matrix is filled symmetrically, so it is symmetric to the last bit.
    """
    if not math.isfinite(g):
        raise ValueError("coupling g must be finite")
    if w_table.kind != "W" or w_table.max_degree < max_degree:
        raise ValueError(
            f"need a W table with max_degree >= {max_degree}, "
            f"got kind={w_table.kind} max_degree={w_table.max_degree}"
        )
    basis = PairBasis.build(max_degree)
    size = len(basis)
    h = np.zeros((size, size), dtype=np.float64)
    for a, (n, m) in enumerate(basis.pairs):
        norm_a = math.sqrt(2.0) if n == m else 1.0
        for b in range(a, size):
            p, q = basis.pairs[b]
            norm_b = math.sqrt(2.0) if p == q else 1.0
            v = 2.0 * g * w_value(w_table, (n, m, p, q)).value / (norm_a * norm_b)
            if a == b:
                v += n + m + 1
            h[a, b] = v
            h[b, a] = v
    return Hamiltonian(matrix=h, coupling=g, basis=basis)


def ground_state_energy(h: Hamiltonian) -> float:
    """Smallest eigenvalue by dense symmetric diagonalization.

    The eigenpair residual is checked against 1e-10 * ||H||_2; dense solves
    at these basis sizes are comfortably inside that.
    """
    vals, vecs = scipy.linalg.eigh(h.matrix)
    e0 = float(vals[0])
    v0 = vecs[:, 0]
    norm_h = float(max(abs(vals[0]), abs(vals[-1])))
    residual = float(np.linalg.norm(h.matrix @ v0 - e0 * v0))
    if norm_h > 0 and residual > 1e-10 * norm_h:
        raise ArithmeticError(
            f"eigensolver residual {residual:.3e} exceeds 1e-10 * ||H|| = "
            f"{1e-10 * norm_h:.3e}"
        )
    return e0
