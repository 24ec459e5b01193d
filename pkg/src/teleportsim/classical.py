"""Transmission strategies that use classical communication only.

The sender measures, tells the receiver the outcome, and the receiver
prepares a guess.  For the two-state ensemble this module provides the
general POVM fidelity evaluator plus the closed forms for the three named
strategies:

  * minimum-error measurement, receiver prepares the identified state;
  * unambiguous discrimination with a "don't know" outcome;
  * minimum-error measurement with an optimally biased guess.

The biased-guess optimum coincides with the Fuchs-Peres closed form; that
is the best strategy known here, not one proven optimal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import rng as rngmod
from .ensembles import TwoStateEnsemble, make_states, overlap
from .states import PureState

_POVM_SUM_ATOL = 1e-10
_POVM_EIG_FLOOR = -1e-12


class DegenerateEnsembleError(ValueError):
    """Raised when theta = pi/2 makes the two signal states identical."""


@dataclass(frozen=True, eq=False)
class ClassicalStrategy:
    """A POVM together with the receiver's guess for each outcome."""

    povm: tuple
    guesses: tuple

    def __post_init__(self):
        ops = []
        for m in self.povm:
            m = np.asarray(m, dtype=complex)
            if m.shape != (2, 2):
                raise ValueError(f"POVM elements must be 2x2, got {m.shape}")
            if np.abs(m - m.conj().T).max() > 1e-12:
                raise ValueError("POVM element not Hermitian")
            if float(np.linalg.eigvalsh(m).min()) < _POVM_EIG_FLOOR:
                raise ValueError("POVM element has a negative eigenvalue")
            ops.append(m)
        total = sum(ops)
        if np.abs(total - np.eye(2)).max() > _POVM_SUM_ATOL:
            raise ValueError("POVM elements do not sum to the identity")
        if len(self.guesses) != len(ops):
            raise ValueError("need exactly one guess state per POVM element")
        for g in self.guesses:
            if not isinstance(g, PureState) or g.n_qubits != 1:
                raise ValueError("guesses must be single-qubit PureState values")
        object.__setattr__(self, "povm", tuple(ops))
        object.__setattr__(self, "guesses", tuple(self.guesses))


@dataclass(frozen=True)
class StrategyReport:
    fidelity: float
    error_probability: Optional[float] = None
    guess_angle: Optional[float] = None


def classical_fidelity(strategy: ClassicalStrategy, ens: TwoStateEnsemble) -> float:
    """Average fidelity of measure-and-prepare over the two signal states.

    Evaluates (1/2) sum_i sum_j <psi_j|A_i|psi_j> |<psi_j|g_i>|^2 for the
    strategy's POVM {A_i} and guesses {g_i}.
    """
    f = 0.0
    for psi in make_states(ens):
        a = psi.amplitudes
        for m, g in zip(strategy.povm, strategy.guesses):
            p = float(np.real(a.conj() @ m @ a))
            f += 0.5 * p * float(abs(np.vdot(g.amplitudes, a)) ** 2)
    return f


def min_error_probability(ens: TwoStateEnsemble) -> float:
    """Smallest attainable probability of misidentifying the state: (1-cos theta)/2."""
    return float(0.5 * (1.0 - np.cos(ens.theta)))


def fidelity_min_error(ens: TwoStateEnsemble) -> float:
    """Fidelity when the receiver prepares the identified signal state.

    A wrong identification still overlaps the true state by sin^2(theta),
    giving 1 - (1 - cos(theta)) cos^2(theta) / 2.
    """
    return float(1.0 - 0.5 * (1.0 - np.cos(ens.theta)) * np.cos(ens.theta) ** 2)


def unambiguous_success_probability(ens: TwoStateEnsemble) -> float:
    """Maximum conclusive-outcome probability, 1 - sin(theta)."""
    return 1.0 - overlap(ens)


def fidelity_unambiguous(ens: TwoStateEnsemble) -> float:
    """Fidelity of unambiguous discrimination with a random guess on failure.

    Conclusive outcomes (probability 1 - sin theta) are prepared exactly; on
    the inconclusive outcome the receiver guesses one of the two states at
    random.  This gives 1 - sin(theta)/2 + sin^3(theta)/2.
    """
    s = overlap(ens)
    return float(1.0 - 0.5 * s + 0.5 * s**3)


def optimal_guess_angle(ens: TwoStateEnsemble) -> float:
    """Guess angle maximizing the biased-guess fidelity: arctan(sin/cos^2).

    Raises DegenerateEnsembleError at theta = pi/2, where the signal states
    coincide and the angle is undefined (cos^2 theta = 0).
    """
    c = np.cos(ens.theta)
    if c**2 < 1e-15:
        raise DegenerateEnsembleError(
            "theta = pi/2: the two states are identical, guess angle undefined"
        )
    return float(np.arctan(np.sin(ens.theta) / c**2))


def fidelity_biased_guess(ens: TwoStateEnsemble, guess_angle):
    """Fidelity of the computational-basis measurement with guesses at ``guess_angle``.

    The receiver prepares cos(g/2)|0> + sin(g/2)|1> on outcome 0 and its
    0<->1 mirror on outcome 1:

        cos^2(theta/2) cos^2((theta-g)/2) + sin^2(theta/2) sin^2((theta+g)/2)

    ``guess_angle`` may be a scalar or an array (broadcast elementwise).
    """
    t, g = ens.theta, guess_angle
    value = (
        np.cos(t / 2) ** 2 * np.cos((t - g) / 2) ** 2
        + np.sin(t / 2) ** 2 * np.sin((t + g) / 2) ** 2
    )
    return float(value) if np.ndim(value) == 0 else value


def fidelity_optimized(ens: TwoStateEnsemble) -> StrategyReport:
    """Best known classical fidelity: min-error measurement, biased guess.

    At theta = pi/2 the formula's maximizer degenerates; guessing the common
    state (guess angle pi/2) transmits it exactly.
    """
    pe = min_error_probability(ens)
    try:
        g = optimal_guess_angle(ens)
    except DegenerateEnsembleError:
        return StrategyReport(fidelity=1.0, error_probability=pe, guess_angle=np.pi / 2)
    return StrategyReport(
        fidelity=fidelity_biased_guess(ens, g), error_probability=pe, guess_angle=g
    )


def fidelity_fuchs_peres(ens: TwoStateEnsemble) -> float:
    """Fuchs-Peres closed form (1 + sqrt(1 - s^2 + s^4))/2 with s = sin(theta).

    Numerically identical to fidelity_optimized; kept as an independent
    expression for cross-checking.
    """
    s2 = overlap(ens) ** 2
    return float(0.5 * (1.0 + np.sqrt(1.0 - s2 + s2**2)))


def projective_guess_strategy(
    ens: TwoStateEnsemble, guess_angle: float
) -> ClassicalStrategy:
    """Computational-basis projectors with mirrored guesses at ``guess_angle``."""
    g = guess_angle
    g0 = PureState(np.array([np.cos(g / 2), np.sin(g / 2)]))
    g1 = PureState(np.array([np.sin(g / 2), np.cos(g / 2)]))
    return ClassicalStrategy(
        povm=(np.diag([1.0, 0.0]), np.diag([0.0, 1.0])), guesses=(g0, g1)
    )


def min_error_strategy(ens: TwoStateEnsemble) -> ClassicalStrategy:
    """Min-error measurement, receiver prepares the identified signal state."""
    psi1, psi2 = make_states(ens)
    return ClassicalStrategy(
        povm=(np.diag([1.0, 0.0]), np.diag([0.0, 1.0])), guesses=(psi1, psi2)
    )


def optimized_strategy(ens: TwoStateEnsemble) -> ClassicalStrategy:
    """The biased-guess strategy at the optimal guess angle."""
    report = fidelity_optimized(ens)
    return projective_guess_strategy(ens, report.guess_angle)


def unambiguous_strategy(ens: TwoStateEnsemble) -> ClassicalStrategy:
    """Unambiguous-discrimination POVM realized with four outcomes.

    Elements 1 and 2 are projectors onto the states orthogonal to psi2 and
    psi1, scaled by 1/(1 + sin theta) so each signal state is identified
    with probability exactly 1 - sin(theta).  The completing "don't know"
    element is split into two equal halves guessed as psi1 and psi2, which
    realizes the random guess within the one-guess-per-outcome interface.
    """
    psi1, psi2 = make_states(ens)
    c, s = np.cos(ens.theta / 2), np.sin(ens.theta / 2)
    # orthogonal complements: <perp1|psi1> = 0, <perp2|psi2> = 0
    perp1 = np.array([s, -c])
    perp2 = np.array([c, -s])
    w = 1.0 / (1.0 + overlap(ens))
    a1 = w * np.outer(perp2, perp2.conj())  # conclusive "psi1"
    a2 = w * np.outer(perp1, perp1.conj())  # conclusive "psi2"
    rest = np.eye(2) - a1 - a2
    return ClassicalStrategy(
        povm=(a1, a2, rest / 2, rest / 2), guesses=(psi1, psi2, psi1, psi2)
    )


def unknown_state_classical_fidelity(
    samples: int, seed: int, fixed_input: Optional[PureState] = None
) -> float:
    """Monte Carlo classical fidelity for a completely unknown input state.

    Haar-uniform inputs are measured in the computational basis and the
    measured basis state is prepared; the average converges to 2/3.  With
    ``fixed_input`` the input distribution is concentrated on that state
    instead (degenerate test mode).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    sizes = rngmod.chunk_sizes(samples)
    gens = rngmod.substreams(seed, len(sizes))
    total = 0.0
    for size, gen in zip(sizes, gens):
        if fixed_input is not None:
            z = np.broadcast_to(fixed_input.amplitudes, (size, 2))
        else:
            z = rngmod.haar_qubits(gen, size)
        u = np.abs(z[:, 0]) ** 2
        total += float(np.sum(u**2 + (1.0 - u) ** 2))
    return total / samples
