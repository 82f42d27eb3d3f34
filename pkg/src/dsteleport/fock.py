"""Sparse multi-mode bosonic Fock-space algebra with a per-mode cutoff.

States and operators are stored as sparse maps keyed by occupation tuples.
This representation is chosen because every state in this package is built
from geometric (Schmidt-diagonal) expansions: the number of non-zero
amplitudes grows polynomially with the cutoff while the dense dimension
grows as ``(n_max + 1) ** mode_count``.

All values are immutable after construction; every operation returns a new
object, so evaluation over parameter grids can be parallelized freely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CutoffMismatchError, RegisterMismatchError

Occupation = tuple[int, ...]

#: Stored amplitudes below this magnitude are dropped (configurable per call).
DEFAULT_PRUNE = 1e-16


def _validate_occupation(occ: Occupation, mode_count: int, n_max: int) -> None:
    if len(occ) != mode_count:
        raise RegisterMismatchError(
            f"occupation {occ} has {len(occ)} modes, register has {mode_count}"
        )
    for n in occ:
        if not isinstance(n, (int, np.integer)) or n < 0 or n > n_max:
            raise ValueError(f"occupation {occ} outside [0, {n_max}] per mode")


@dataclass(frozen=True)
class StateVector:
    """Sparse pure state over a register of ``mode_count`` bosonic modes."""

    mode_count: int
    n_max: int
    amplitudes: dict = field(default_factory=dict)  # Occupation -> complex

    @staticmethod
    def from_amplitudes(
        mode_count: int,
        n_max: int,
        amplitudes: dict,
        prune: float = DEFAULT_PRUNE,
    ) -> "StateVector":
        """Build a state, validating occupations and pruning tiny amplitudes."""
        kept = {}
        for occ, amp in amplitudes.items():
            occ = tuple(occ)
            _validate_occupation(occ, mode_count, n_max)
            amp = complex(amp)
            if abs(amp) >= prune:
                kept[occ] = amp
        return StateVector(mode_count, n_max, kept)

    @staticmethod
    def basis_state(occ, n_max: int) -> "StateVector":
        occ = tuple(occ)
        _validate_occupation(occ, len(occ), n_max)
        return StateVector(len(occ), n_max, {occ: 1.0 + 0.0j})

    def norm_squared(self) -> float:
        return sum(abs(a) ** 2 for a in self.amplitudes.values())

    def norm(self) -> float:
        return math.sqrt(self.norm_squared())

    def normalized(self, prune: float = DEFAULT_PRUNE) -> "StateVector":
        """Return the unit-norm version of this state."""
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize a zero state")
        scaled = {occ: a / n for occ, a in self.amplitudes.items() if abs(a / n) >= prune}
        return StateVector(self.mode_count, self.n_max, scaled)

    def overlap(self, other: "StateVector") -> complex:
        """Inner product <self|other>."""
        _check_same_register(self, other)
        mine, theirs = self.amplitudes, other.amplitudes
        if len(theirs) < len(mine):
            return sum(mine.get(occ, 0j).conjugate() * amp for occ, amp in theirs.items())
        return sum(amp.conjugate() * theirs.get(occ, 0j) for occ, amp in mine.items())

    def scaled(self, factor: complex) -> "StateVector":
        return StateVector(
            self.mode_count,
            self.n_max,
            {occ: factor * a for occ, a in self.amplitudes.items()},
        )


def superpose(terms, prune: float = DEFAULT_PRUNE) -> StateVector:
    """Linear combination ``sum(coeff * state)`` over (coeff, StateVector) pairs."""
    if not terms:
        raise ValueError("superpose needs at least one term")
    first = terms[0][1]
    acc: dict = {}
    for coeff, state in terms:
        _check_same_register(first, state)
        for occ, amp in state.amplitudes.items():
            acc[occ] = acc.get(occ, 0j) + coeff * amp
    acc = {occ: a for occ, a in acc.items() if abs(a) >= prune}
    return StateVector(first.mode_count, first.n_max, acc)


def difference_norm(a: StateVector, b: StateVector) -> float:
    """Euclidean distance ||a - b|| between two state vectors."""
    return superpose([(1.0, a), (-1.0, b)], prune=0.0).norm()


def _check_same_register(a, b) -> None:
    if a.mode_count != b.mode_count:
        raise RegisterMismatchError(
            f"mode counts differ: {a.mode_count} vs {b.mode_count}"
        )
    if a.n_max != b.n_max:
        raise CutoffMismatchError(f"cutoffs differ: {a.n_max} vs {b.n_max}")


def tensor_product(a: StateVector, b: StateVector, prune: float = DEFAULT_PRUNE) -> StateVector:
    """Kronecker product of two states; ``b``'s modes follow ``a``'s.

    Both factors must share the same per-mode cutoff so the combined
    register has a single well-defined truncation.
    """
    if a.n_max != b.n_max:
        raise CutoffMismatchError(f"cutoffs differ: {a.n_max} vs {b.n_max}")
    amps = {}
    for occ_a, amp_a in a.amplitudes.items():
        for occ_b, amp_b in b.amplitudes.items():
            amp = amp_a * amp_b
            if abs(amp) >= prune:
                amps[occ_a + occ_b] = amp
    return StateVector(a.mode_count + b.mode_count, a.n_max, amps)


@dataclass(frozen=True)
class DensityOperator:
    """Sparse Hermitian operator over a truncated occupation basis.

    ``partition`` labels each mode with a region tag (for example ``"I"``
    for modes visible inside the observer's horizon and ``"II"`` for modes
    beyond it); :func:`partial_trace` keeps one tag and traces the rest.
    """

    mode_count: int
    n_max: int
    partition: tuple
    entries: dict = field(default_factory=dict)  # (Occupation, Occupation) -> complex

    def __post_init__(self):
        if len(self.partition) != self.mode_count:
            raise RegisterMismatchError(
                f"partition has {len(self.partition)} labels for "
                f"{self.mode_count} modes"
            )

    @staticmethod
    def from_pure(psi: StateVector, partition) -> "DensityOperator":
        """Outer product |psi><psi| with the given region labeling."""
        partition = tuple(partition)
        entries = {}
        for occ_r, amp_r in psi.amplitudes.items():
            for occ_c, amp_c in psi.amplitudes.items():
                entries[(occ_r, occ_c)] = amp_r * amp_c.conjugate()
        return DensityOperator(psi.mode_count, psi.n_max, partition, entries)

    def trace(self) -> complex:
        return sum(v for (r, c), v in self.entries.items() if r == c)

    def hermiticity_defect(self) -> float:
        """Largest |entry(a,b) - conj(entry(b,a))| over stored entries."""
        worst = 0.0
        for (r, c), v in self.entries.items():
            worst = max(worst, abs(v - self.entries.get((c, r), 0j).conjugate()))
        return worst

    def basis(self) -> list:
        """Sorted list of occupation tuples spanned by the stored entries."""
        occs = set()
        for r, c in self.entries:
            occs.add(r)
            occs.add(c)
        return sorted(occs)

    def to_dense(self):
        """Dense matrix over :meth:`basis`, for eigenvalue checks."""
        basis = self.basis()
        index = {occ: i for i, occ in enumerate(basis)}
        mat = np.zeros((len(basis), len(basis)), dtype=complex)
        for (r, c), v in self.entries.items():
            mat[index[r], index[c]] = v
        return mat, basis

    def min_eigenvalue(self) -> float:
        mat, _ = self.to_dense()
        if mat.size == 0:
            return 0.0
        return float(np.linalg.eigvalsh(0.5 * (mat + mat.conj().T)).min())

    def scaled(self, factor: complex) -> "DensityOperator":
        return DensityOperator(
            self.mode_count,
            self.n_max,
            self.partition,
            {k: factor * v for k, v in self.entries.items()},
        )


def add_density(a: DensityOperator, b: DensityOperator) -> DensityOperator:
    if a.mode_count != b.mode_count or a.n_max != b.n_max or a.partition != b.partition:
        raise RegisterMismatchError("density operators live on different registers")
    entries = dict(a.entries)
    for k, v in b.entries.items():
        entries[k] = entries.get(k, 0j) + v
    return DensityOperator(a.mode_count, a.n_max, a.partition, entries)


def tensor_density(a: DensityOperator, b: DensityOperator) -> DensityOperator:
    """Kronecker product of two density operators (partitions concatenate)."""
    if a.n_max != b.n_max:
        raise CutoffMismatchError(f"cutoffs differ: {a.n_max} vs {b.n_max}")
    entries = {}
    for (ra, ca), va in a.entries.items():
        for (rb, cb), vb in b.entries.items():
            entries[(ra + rb, ca + cb)] = va * vb
    return DensityOperator(
        a.mode_count + b.mode_count, a.n_max, a.partition + b.partition, entries
    )


def _split_indices(partition, keep: str):
    keep_idx = [i for i, lab in enumerate(partition) if lab == keep]
    trace_idx = [i for i, lab in enumerate(partition) if lab != keep]
    if not keep_idx:
        raise ValueError(f"no modes labeled {keep!r} in partition {partition}")
    if not trace_idx:
        raise ValueError(f"all modes labeled {keep!r}; nothing to trace out")
    return keep_idx, trace_idx


def partial_trace(rho: DensityOperator, keep: str) -> DensityOperator:
    """Trace out every mode whose partition label differs from ``keep``."""
    keep_idx, trace_idx = _split_indices(rho.partition, keep)
    entries: dict = {}
    for (r, c), v in rho.entries.items():
        if all(r[i] == c[i] for i in trace_idx):
            key = (
                tuple(r[i] for i in keep_idx),
                tuple(c[i] for i in keep_idx),
            )
            entries[key] = entries.get(key, 0j) + v
    return DensityOperator(
        len(keep_idx), rho.n_max, tuple(rho.partition[i] for i in keep_idx), entries
    )


def partial_trace_pure(psi: StateVector, partition, keep: str) -> DensityOperator:
    """Reduced density operator of a pure state without materializing |psi><psi|.

    Amplitudes are grouped by the occupation pattern of the traced modes;
    the result is the sum of outer products of the per-pattern conditional
    vectors, which is identical to ``partial_trace(from_pure(psi))`` but
    costs O(groups * group_size^2) instead of O(len(psi)^2).
    """
    partition = tuple(partition)
    if len(partition) != psi.mode_count:
        raise RegisterMismatchError(
            f"partition has {len(partition)} labels for {psi.mode_count} modes"
        )
    keep_idx, trace_idx = _split_indices(partition, keep)
    groups: dict = {}
    for occ, amp in psi.amplitudes.items():
        traced = tuple(occ[i] for i in trace_idx)
        kept = tuple(occ[i] for i in keep_idx)
        groups.setdefault(traced, []).append((kept, amp))
    entries: dict = {}
    for members in groups.values():
        for kept_r, amp_r in members:
            for kept_c, amp_c in members:
                key = (kept_r, kept_c)
                entries[key] = entries.get(key, 0j) + amp_r * amp_c.conjugate()
    return DensityOperator(
        len(keep_idx), psi.n_max, tuple(partition[i] for i in keep_idx), entries
    )


def fidelity_pure_mixed(psi: StateVector, rho: DensityOperator) -> float:
    """Overlap <psi|rho|psi> of a normalized pure state with a mixed state."""
    if psi.mode_count != rho.mode_count or psi.n_max != rho.n_max:
        raise RegisterMismatchError(
            f"state on ({psi.mode_count} modes, n_max {psi.n_max}) vs operator on "
            f"({rho.mode_count} modes, n_max {rho.n_max})"
        )
    if abs(psi.norm() - 1.0) > 1e-8:
        raise ValueError(f"state is not normalized (norm = {psi.norm()!r})")
    total = 0j
    for occ_r, amp_r in psi.amplitudes.items():
        for occ_c, amp_c in psi.amplitudes.items():
            v = rho.entries.get((occ_r, occ_c))
            if v is not None:
                total += amp_r.conjugate() * v * amp_c
    return total.real
