"""One-shot teleportation into two symmetric clones over a 4-qubit resource.

The resource ("telecloning") state is

    (|0>|phi0> + |1>|phi1>) / sqrt(2)

on qubits ordered (port, ancilla, clone B, clone C), where

    phi0 = a|0>_A|00> + b|1>_A(|01> + |10>) + c|0>_A|11>

and phi1 is its 0<->1 mirror.  A Bell measurement on (input, port) followed
by the same Pauli correction on each of (ancilla, B, C) maps every branch
exactly onto x*phi0 + y*phi1 for input x|0> + y|1>; the clones are partial
traces of that state.  The universal choice (a, b, c) =
(sqrt(2/3), sqrt(1/6), 0) reproduces the symmetric universal cloner; for a
two-state ensemble the coefficients are instead optimized numerically for
global clone fidelity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .ensembles import TwoStateEnsemble, make_states
from .optimize import grid_then_golden_max
from .protocols import STANDARD_CORRECTION_MATRICES, ProtocolSpec
from .states import (
    DensityMatrix,
    LocalOperator,
    PureState,
    apply_local,
    bell_measure,
    fidelity,
    partial_trace,
    tensor,
    von_neumann_entropy,
)

_SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class CloneCoeffs:
    """Real nonnegative amplitudes (a, b, c) with a^2 + 2 b^2 + c^2 = 1."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        a, b, c = float(self.a), float(self.b), float(self.c)
        if min(a, b, c) < -1e-12:
            raise ValueError(f"coefficients must be nonnegative, got {(a, b, c)}")
        norm = a * a + 2 * b * b + c * c
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"a^2 + 2b^2 + c^2 = {norm!r}, expected 1")
        object.__setattr__(self, "a", max(a, 0.0))
        object.__setattr__(self, "b", max(b, 0.0))
        object.__setattr__(self, "c", max(c, 0.0))


@dataclass(frozen=True, eq=False)
class TelecloningSystem:
    """The 4-qubit resource state together with its defining coefficients."""

    state: PureState
    coeffs: CloneCoeffs

    def __post_init__(self):
        expected = _telecloning_amplitudes(self.coeffs)
        if self.state.n_qubits != 4 or np.abs(
            self.state.amplitudes - expected
        ).max() > 1e-12:
            raise ValueError("state does not match the coefficient construction")
        rho = self.state.density()
        for q in range(4):
            reduced = partial_trace(rho, (q,)).elements
            if np.abs(reduced - np.eye(2) / 2).max() > 1e-10:
                raise ValueError(f"qubit {q} reduced state is not I/2")


@dataclass(frozen=True, eq=False)
class TelecloneResult:
    """Outcome branches and clone states from one telecloning run."""

    per_outcome: tuple
    clone_b: DensityMatrix
    clone_c: DensityMatrix
    joint_clones: DensityMatrix


def universal_coeffs() -> CloneCoeffs:
    """Coefficients of the symmetric universal cloner: (sqrt(2/3), sqrt(1/6), 0)."""
    return CloneCoeffs(np.sqrt(2.0 / 3.0), np.sqrt(1.0 / 6.0), 0.0)


def _phi_pair(coeffs: CloneCoeffs):
    """Amplitude vectors of phi0 and phi1 on (ancilla, B, C)."""
    a, b, c = coeffs.a, coeffs.b, coeffs.c
    phi0 = np.zeros(8)
    phi0[0b000], phi0[0b101], phi0[0b110], phi0[0b011] = a, b, b, c
    phi1 = np.zeros(8)
    phi1[0b100], phi1[0b001], phi1[0b010], phi1[0b111] = c, b, b, a
    return phi0, phi1


def _telecloning_amplitudes(coeffs: CloneCoeffs) -> np.ndarray:
    phi0, phi1 = _phi_pair(coeffs)
    return np.concatenate([phi0, phi1]) / _SQRT2


def build_clone_states(coeffs: CloneCoeffs):
    """The exactly orthogonal 3-qubit branch states (phi0, phi1)."""
    phi0, phi1 = _phi_pair(coeffs)
    return PureState(phi0), PureState(phi1)


def build_telecloning_state(coeffs: CloneCoeffs) -> TelecloningSystem:
    """Assemble (|0>phi0 + |1>phi1)/sqrt(2) on (port, ancilla, B, C)."""
    return TelecloningSystem(
        state=PureState(_telecloning_amplitudes(coeffs)), coeffs=coeffs
    )


def apply_cloner(input_state: PureState, coeffs: CloneCoeffs) -> PureState:
    """Direct cloner map x|0> + y|1>  ->  x phi0 + y phi1 (no teleportation)."""
    if input_state.n_qubits != 1:
        raise ValueError("cloner input must be a single qubit")
    x, y = input_state.amplitudes
    phi0, phi1 = _phi_pair(coeffs)
    return PureState(x * phi0 + y * phi1)


def protocol_spec(system: TelecloningSystem, targets=(0, 1, 2)) -> ProtocolSpec:
    """Telecloning as a generic protocol, for enumeration cross-checks."""
    corrections = {
        k: LocalOperator.uniform(3, m) for k, m in STANDARD_CORRECTION_MATRICES.items()
    }
    return ProtocolSpec(
        resource_state=system.state,
        measured_pair=(0, 1),
        corrections=corrections,
        evaluation_targets=tuple(targets),
    )


def teleclone(input_state: PureState, system: TelecloningSystem) -> TelecloneResult:
    """Run the telecloning protocol on a single-qubit input.

    Bell-measures (input, port), applies the standard correction P x P x P
    on (ancilla, B, C), and traces out qubits to extract the clones.  Every
    corrected branch equals x phi0 + y phi1 exactly, so the four outcome
    probabilities are 1/4 independent of the input.
    """
    if input_state.n_qubits != 1:
        raise ValueError("telecloning input must be a single qubit")
    joint = tensor(input_state, system.state)
    per = []
    averaged = np.zeros((8, 8), dtype=complex)
    for outcome in bell_measure(joint, (0, 1)):
        op = LocalOperator.uniform(3, STANDARD_CORRECTION_MATRICES[outcome.index])
        corrected = apply_local(op, outcome.post_state)
        per.append((outcome.probability, corrected))
        amp = corrected.amplitudes
        averaged += outcome.probability * np.outer(amp, amp.conj())
    rho = DensityMatrix(averaged)
    return TelecloneResult(
        per_outcome=tuple(per),
        clone_b=partial_trace(rho, (1,)),
        clone_c=partial_trace(rho, (2,)),
        joint_clones=partial_trace(rho, (1, 2)),
    )


def global_clone_fidelity(ens: TwoStateEnsemble, coeffs: CloneCoeffs) -> float:
    """Ensemble-averaged overlap of the joint clone state with the ideal pair.

    (1/2) sum_j <psi_j psi_j| rho_joint^(j) |psi_j psi_j>, with rho_joint^(j)
    obtained by running the full telecloning protocol on psi_j.
    """
    system = build_telecloning_state(coeffs)
    total = 0.0
    for psi in make_states(ens):
        result = teleclone(psi, system)
        total += 0.5 * fidelity(tensor(psi, psi), result.joint_clones)
    return total


def _fast_global_fidelity(theta: float, a: float, b: float, c: float) -> float:
    """Optimizer objective: same quantity as global_clone_fidelity, via the
    direct cloner map on raw arrays (no protocol, no validation overhead)."""
    phi0 = np.zeros(8)
    phi0[0b000], phi0[0b101], phi0[0b110], phi0[0b011] = a, b, b, c
    phi1 = np.zeros(8)
    phi1[0b100], phi1[0b001], phi1[0b010], phi1[0b111] = c, b, b, a
    total = 0.0
    x, y = np.cos(theta / 2), np.sin(theta / 2)
    for xx, yy in ((x, y), (y, x)):
        branch = (xx * phi0 + yy * phi1).reshape(2, 4)
        rho_bc = branch.T @ branch  # sum over the ancilla index
        target = np.kron([xx, yy], [xx, yy])
        total += 0.5 * float(target @ rho_bc @ target)
    return total


_OCTANT_STARTS = tuple(
    (t, q) for t in (0.12, 0.75, 1.42) for q in (0.12, 0.75, 1.42)
)


def optimize_coeffs(ens: TwoStateEnsemble) -> CloneCoeffs:
    """Coefficients maximizing global clone fidelity for this ensemble.

    The constraint surface a^2 + 2b^2 + c^2 = 1 with nonnegative entries is
    parametrized by two sphere angles; a fixed set of starts is refined with
    SLSQP, so the result is deterministic.  theta = pi/2 is degenerate (the
    signal states coincide) but still well-defined; the optimizer returns
    the fidelity-1 coefficients (1/2, 1/2, 1/2) there.
    """
    theta = ens.theta

    def neg(p):
        t, q = p
        u = (np.cos(t), np.sin(t) * np.cos(q), np.sin(t) * np.sin(q))
        return -_fast_global_fidelity(theta, u[0], u[1] / _SQRT2, u[2])

    best = None
    for start in _OCTANT_STARTS:
        res = minimize(
            neg,
            start,
            method="SLSQP",
            bounds=((0.0, np.pi / 2), (0.0, np.pi / 2)),
            options={"ftol": 1e-14, "maxiter": 300},
        )
        if best is None or res.fun < best.fun:
            best = res
    t, q = best.x
    u = np.array([np.cos(t), np.sin(t) * np.cos(q) / _SQRT2, np.sin(t) * np.sin(q)])
    u = np.clip(u, 0.0, None)
    u /= np.sqrt(u[0] ** 2 + 2 * u[1] ** 2 + u[2] ** 2)
    return CloneCoeffs(u[0], u[1], u[2])


def optimal_global_fidelity(ens: TwoStateEnsemble) -> float:
    """Best global fidelity of any 1-to-2 cloner for this ensemble.

    Maximizes (|<psi1 psi1|chi1>|^2 + |<psi2 psi2|chi2>|^2)/2 over pure
    two-qubit outputs chi_j constrained by <chi1|chi2> = <psi1|psi2> (the
    isometry condition).  The outputs are taken in the real span of
    {|00>, (|01>+|10>)/sqrt(2), |11>} with chi2 the 0<->1 mirror of chi1,
    which spot checks against unrestricted optimization confirm is lossless.
    With that reduction the feasible set is a one-parameter curve, scanned
    coarsely and refined by golden-section search.
    """
    theta = ens.theta
    k = np.sin(theta)
    x, y = np.cos(theta / 2), np.sin(theta / 2)
    target = np.array([x * x, _SQRT2 * x * y, y * y])
    radius = np.sqrt((1.0 + k) / 2.0)
    off = np.sqrt(max(1.0 - k, 0.0) / 2.0)

    def value(s: float) -> float:
        q = radius * np.cos(s)
        u = radius * np.sin(s)
        chi = np.array([(u + off) / _SQRT2, q, (u - off) / _SQRT2])
        return float((target @ chi) ** 2)

    best_s = grid_then_golden_max(value, 0.0, 2.0 * np.pi, coarse=721, tol=1e-10)
    return value(best_s)


def alice_receivers_entanglement(system: TelecloningSystem) -> float:
    """Entropy (ebits) across the (port, ancilla) | (B, C) bipartition."""
    return von_neumann_entropy(partial_trace(system.state.density(), (2, 3)))


def joint_clones_closed_form(coeffs: CloneCoeffs) -> DensityMatrix:
    """Closed-form 4x4 candidate for the clones' joint reduced state.

    Diagonal (a^2+b^2+c^2)/2 on the |00>/|11> entries and b^2/2 in the
    middle block, with corner a(b+c).  This expression does NOT agree with
    the partial trace of the telecloning state (which has eigenvalues
    {(a+c)^2/2, (a-c)^2/2, 2b^2, 0}); it is retained only for comparison,
    and the numeric partial trace is the ground truth.  For some coefficient
    choices (e.g. a = b = c = 1/2) the closed form is not even positive
    semidefinite and this constructor raises.
    """
    a, b, c = coeffs.a, coeffs.b, coeffs.c
    d = (a * a + b * b + c * c) / 2.0
    corner = a * (b + c)
    m = np.array(
        [
            [d, 0, 0, corner],
            [0, b * b / 2.0, 0, 0],
            [0, 0, b * b / 2.0, 0],
            [corner, 0, 0, d],
        ]
    )
    return DensityMatrix(m)
