"""Named self-checks behind the ``verify`` CLI subcommand.

Each check recomputes one documented invariant of the package at its stated
tolerance and reports the measured deviation.  The registry deliberately
pairs closed forms with independent routes (protocol enumeration, grid
search, finite differences) so a regression in either side is caught.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import channels as ch
from . import classical as cl
from . import protocols as pr
from . import telecloning as tc
from .ensembles import (
    Channel,
    TwoStateEnsemble,
    channel_state,
    ensemble_density,
    make_states,
    overlap,
    source_entropy,
)
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

LOG2_3 = float(np.log2(3.0))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _random_state(rng, n_qubits: int) -> PureState:
    z = rng.standard_normal(2**n_qubits) + 1j * rng.standard_normal(2**n_qubits)
    return PureState(z / np.linalg.norm(z))


def _random_local_unitary(rng, n_qubits: int) -> LocalOperator:
    factors = []
    for _ in range(n_qubits):
        z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        q, r = np.linalg.qr(z)
        factors.append(q * (np.diag(r) / np.abs(np.diag(r))))
    return LocalOperator(tuple(factors))


# --- core linear algebra -----------------------------------------------------


def check_norm_preservation(cfg):
    rng = np.random.default_rng(cfg.seed)
    worst = 0.0
    for _ in range(20):
        psi = _random_state(rng, 3)
        out = apply_local(_random_local_unitary(rng, 3), psi)
        worst = max(worst, abs(float(np.vdot(out.amplitudes, out.amplitudes).real) - 1.0))
    return worst <= 1e-12, f"max |norm-1| = {worst:.2e} (tol 1e-12)"


def check_partial_trace_consistency(cfg):
    rng = np.random.default_rng(cfg.seed + 1)
    worst = 0.0
    for _ in range(10):
        rho = _random_state(rng, 4).density()
        direct = partial_trace(rho, (0, 2))
        stepped = partial_trace(partial_trace(rho, (0, 2, 3)), (0, 1))
        worst = max(worst, float(np.abs(direct.elements - stepped.elements).max()))
    return worst <= 1e-12, f"two-step vs one-step, max dev = {worst:.2e}"


def check_entropy_bounds(cfg):
    rng = np.random.default_rng(cfg.seed + 2)
    worst_inv = 0.0
    for _ in range(10):
        psi = _random_state(rng, 3)
        rho = partial_trace(psi.density(), (0, 1))
        s = von_neumann_entropy(rho)
        if not (0.0 <= s <= 2.0 + 1e-12):
            return False, f"entropy {s} outside [0, 2]"
        u = _random_local_unitary(rng, 2).matrix()
        rotated = DensityMatrix(u @ rho.elements @ u.conj().T)
        worst_inv = max(worst_inv, abs(von_neumann_entropy(rotated) - s))
    return worst_inv <= 1e-9, f"entropy unitary-invariance dev = {worst_inv:.2e}"


def check_bell_completeness(cfg):
    rng = np.random.default_rng(cfg.seed + 3)
    worst_p, worst_r = 0.0, 0.0
    for _ in range(10):
        psi = _random_state(rng, 4)
        outcomes = bell_measure(psi, (1, 2))
        worst_p = max(worst_p, abs(sum(o.probability for o in outcomes) - 1.0))
        mix = sum(
            o.probability * o.post_state.density().elements
            for o in outcomes
            if o.post_state is not None
        )
        reduced = partial_trace(psi.density(), (0, 3)).elements
        worst_r = max(worst_r, float(np.abs(mix - reduced).max()))
    ok = worst_p <= 1e-12 and worst_r <= 1e-10
    return ok, f"prob-sum dev = {worst_p:.2e}, remainder-mix dev = {worst_r:.2e}"


# --- ensemble -----------------------------------------------------------------


def check_entropy_decreasing(cfg):
    grid = np.linspace(1e-3, np.pi / 2 - 1e-3, 60)
    vals = [source_entropy(TwoStateEnsemble(t)) for t in grid]
    ok = all(b < a for a, b in zip(vals, vals[1:]))
    return ok, "source entropy strictly decreasing on (0, pi/2)"


def check_ensemble_symmetry(cfg):
    x = np.array([[0, 1], [1, 0]])
    worst = 0.0
    for t in np.linspace(0, np.pi / 2, 25):
        rho = ensemble_density(TwoStateEnsemble(t)).elements
        worst = max(worst, float(np.abs(x @ rho @ x - rho).max()))
    return worst <= 1e-12, f"X rho X = rho, max dev = {worst:.2e}"


def check_overlap_grid(cfg):
    worst = 0.0
    for t in np.linspace(0, np.pi / 2, 100):
        ens = TwoStateEnsemble(t)
        p1, p2 = make_states(ens)
        inner = abs(np.vdot(p1.amplitudes, p2.amplitudes))
        worst = max(worst, abs(inner - overlap(ens)))
    return worst <= 1e-12, f"overlap vs inner product, max dev = {worst:.2e}"


# --- classical strategies -------------------------------------------------------


def check_classical_ordering(cfg):
    for t in np.linspace(0, np.pi / 2, 181):
        ens = TwoStateEnsemble(t)
        f_u = cl.fidelity_unambiguous(ens)
        f_m = cl.fidelity_min_error(ens)
        f_o = cl.fidelity_optimized(ens).fidelity
        if not (f_u <= f_m + 1e-12 and f_m <= f_o + 1e-12):
            return False, f"ordering broken at theta = {t}"
    return True, "unambiguous <= min-error <= optimized on 181-point grid"


def check_classical_symmetry(cfg):
    worst = 0.0
    for t in np.linspace(0, np.pi / 4, 90):
        a = cl.fidelity_optimized(TwoStateEnsemble(t)).fidelity
        b = cl.fidelity_optimized(TwoStateEnsemble(np.pi / 2 - t)).fidelity
        worst = max(worst, abs(a - b))
    return worst <= 1e-9, f"optimized(theta) vs optimized(pi/2-theta) dev = {worst:.2e}"


def check_fuchs_peres_coincidence(cfg):
    worst = 0.0
    for t in np.linspace(0, np.pi / 2, 200):
        ens = TwoStateEnsemble(t)
        worst = max(
            worst,
            abs(cl.fidelity_optimized(ens).fidelity - cl.fidelity_fuchs_peres(ens)),
        )
    return worst <= 1e-9, f"optimized vs Fuchs-Peres closed form dev = {worst:.2e}"


def check_evaluator_consistency(cfg):
    worst = 0.0
    for t in np.linspace(0.05, np.pi / 2 - 0.05, 12):
        ens = TwoStateEnsemble(t)
        for g in np.linspace(0, np.pi / 2, 7):
            ev = cl.classical_fidelity(cl.projective_guess_strategy(ens, g), ens)
            worst = max(worst, abs(ev - cl.fidelity_biased_guess(ens, g)))
    return worst <= 1e-12, f"POVM evaluator vs closed form dev = {worst:.2e}"


def check_stationarity(cfg):
    worst = 0.0
    h = 1e-5
    for t in np.linspace(0.05, np.pi / 2 - 0.05, 30):
        ens = TwoStateEnsemble(t)
        g = cl.optimal_guess_angle(ens)
        deriv = (
            cl.fidelity_biased_guess(ens, g + h) - cl.fidelity_biased_guess(ens, g - h)
        ) / (2 * h)
        worst = max(worst, abs(deriv))
    return worst <= 1e-8, f"dF/dg at optimum (central diff) = {worst:.2e}"


def check_unknown_state_mc(cfg):
    est = cl.unknown_state_classical_fidelity(cfg.samples, cfg.seed)
    dev = abs(est - 2.0 / 3.0)
    # 0.002 is ~13 standard errors at 1e6 samples; scale up for smaller runs
    bound = max(0.002, 0.9 / np.sqrt(cfg.samples))
    return dev <= bound, f"Haar MC estimate {est:.6f}, |dev from 2/3| = {dev:.2e}"


# --- channel strategies ----------------------------------------------------------


def check_horodecki_identity(cfg):
    worst = 0.0
    bump = 1e-6 if cfg.tamper else 0.0
    for a2 in np.linspace(0, 0.5, 101):
        c = Channel(np.sqrt(a2))
        worst = max(
            worst,
            abs(ch.horodecki_optimal_fidelity(c) - (ch.average_fidelity_direct(c) + bump)),
        )
    return worst <= 1e-15, f"(2f+1)/3 vs (2/3)(1+ab), max dev = {worst:.2e}"


def check_combined_dominance(cfg):
    worst = -np.inf
    for t in np.linspace(0, np.pi / 2, 50):
        ens = TwoStateEnsemble(t)
        for a2 in np.linspace(0, 0.5, 50):
            c = Channel(np.sqrt(a2))
            best = ch.optimize_combined(ens, c).fidelity
            floor = max(
                ch.two_state_direct_fidelity(ens, c),
                ch.purification_fidelity_two_state(ens, c),
            )
            worst = max(worst, floor - best)
    return worst <= 1e-12, f"max(floor - optimized) = {worst:.2e}"


def check_crossover(cfg):
    ens = TwoStateEnsemble(np.pi / 4)
    f_cl = cl.fidelity_optimized(ens).fidelity
    alphas = [a for a in np.linspace(0.05, 0.65, 61)
              if ch.two_state_direct_fidelity(ens, Channel(a)) < f_cl]
    ok = len(alphas) > 0
    return ok, f"classical beats direct for {len(alphas)} sampled alpha > 0 values"


def check_endpoint_reductions(cfg):
    worst = 0.0
    for t in (0.2, np.pi / 4, 1.2):
        ens = TwoStateEnsemble(t)
        for a2 in (0.05, 0.2, 0.4):
            c = Channel(np.sqrt(a2))
            lo = abs(
                ch.combined_fidelity(ens, c, c.alpha)
                - ch.two_state_direct_fidelity(ens, c)
            )
            hi = abs(
                ch.combined_fidelity(ens, c, 1 / np.sqrt(2))
                - ch.purification_fidelity_two_state(ens, c)
            )
            worst = max(worst, lo, hi)
    return worst <= 1e-12, f"endpoint reductions, max dev = {worst:.2e}"


def check_monotonicity(cfg):
    grid = [Channel(np.sqrt(a2)) for a2 in np.linspace(0, 0.5, 101)]
    avg = [ch.average_fidelity_direct(c) for c in grid]
    pur = [ch.purification_fidelity_unknown(c) for c in grid]
    mono = all(b >= a - 1e-15 for a, b in zip(avg, avg[1:])) and all(
        b >= a - 1e-15 for a, b in zip(pur, pur[1:])
    )
    dom = all(a >= p - 1e-15 for a, p in zip(avg, pur))
    return mono and dom, "average-direct and purification nondecreasing; direct dominates"


# --- protocol oracle ---------------------------------------------------------------


def check_oracle_agreement(cfg):
    rng = np.random.default_rng(cfg.seed + 10)
    worst = 0.0
    for _ in range(50):
        t = rng.uniform(0, np.pi / 2)
        c = Channel(rng.uniform(0, 1 / np.sqrt(2)))
        ens = TwoStateEnsemble(t)
        spec = pr.standard_teleportation(c)
        psi1, psi2 = make_states(ens)
        enum = 0.5 * (
            pr.enumerate_protocol_fidelity(psi1, spec)
            + pr.enumerate_protocol_fidelity(psi2, spec)
        )
        worst = max(worst, abs(enum - ch.two_state_direct_fidelity(ens, c)))
    return worst <= 1e-12, f"enumeration vs closed form over 50 pairs, dev = {worst:.2e}"


def check_mc_agreement(cfg):
    ens = TwoStateEnsemble(np.pi / 4)
    c = Channel(np.sqrt(0.3))
    spec = pr.standard_teleportation(c)
    psi1, _ = make_states(ens)
    exact = pr.enumerate_protocol_fidelity(psi1, spec)
    mean, stderr = pr.mc_protocol_fidelity(psi1, spec, cfg.samples, cfg.seed)
    dev = abs(mean - exact)
    ok = dev <= 4 * stderr or dev <= 1e-12
    return ok, f"MC mean dev = {dev:.2e} vs 4*stderr = {4 * stderr:.2e}"


def check_haar_average(cfg):
    c = Channel(np.sqrt(0.3))
    mean, stderr = pr.mc_haar_average_fidelity(c, cfg.samples, cfg.seed)
    dev = abs(mean - ch.average_fidelity_direct(c))
    ok = dev <= 4 * stderr
    return ok, f"Haar MC dev = {dev:.2e} vs 4*stderr = {4 * stderr:.2e}"


def check_reproducibility(cfg):
    ens = TwoStateEnsemble(0.9)
    c = Channel(0.4)
    spec = pr.standard_teleportation(c)
    psi1, _ = make_states(ens)
    a = pr.mc_protocol_fidelity(psi1, spec, 10_000, cfg.seed)
    b = pr.mc_protocol_fidelity(psi1, spec, 10_000, cfg.seed)
    ok = a == b
    return ok, "identical (spec, samples, seed) gives bit-identical results"


def check_probability_sanity(cfg):
    rng = np.random.default_rng(cfg.seed + 11)
    worst = 0.0
    for _ in range(20):
        c = Channel(rng.uniform(0, 1 / np.sqrt(2)))
        psi = _random_state(rng, 1)
        outcomes = bell_measure(tensor(psi, channel_state(c)), (0, 1))
        if any(o.probability < -1e-15 for o in outcomes):
            return False, "negative outcome probability"
        worst = max(worst, abs(sum(o.probability for o in outcomes) - 1.0))
    return worst <= 1e-12, f"outcome probabilities sum to 1, dev = {worst:.2e}"


# --- telecloning ----------------------------------------------------------------


def check_universal_telecloning(cfg):
    system = tc.build_telecloning_state(tc.universal_coeffs())
    ent = tc.alice_receivers_entanglement(system)
    if abs(ent - LOG2_3) > 1e-9:
        return False, f"entanglement {ent} != log2(3)"
    spec = tc.protocol_spec(system, targets=(1,))
    for bits in ([1, 0], [0, 1]):
        psi = PureState(np.array(bits, dtype=float))
        f = pr.enumerate_protocol_fidelity(psi, spec)
        if abs(f - 5.0 / 6.0) > 1e-9:
            return False, f"basis clone fidelity {f} != 5/6"
    rho = system.state.density()
    worst = max(
        float(np.abs(partial_trace(rho, (q,)).elements - np.eye(2) / 2).max())
        for q in range(4)
    )
    ok = worst <= 1e-10
    return ok, f"log2(3) entanglement, 5/6 basis clones, I/2 marginals (dev {worst:.2e})"


def check_correction_exactness(cfg):
    rng = np.random.default_rng(cfg.seed + 12)
    system = tc.build_telecloning_state(tc.universal_coeffs())
    phi0, phi1 = tc.build_clone_states(system.coeffs)
    worst = 0.0
    for _ in range(20):
        psi = _random_state(rng, 1)
        x, y = psi.amplitudes
        target = x * phi0.amplitudes + y * phi1.amplitudes
        result = tc.teleclone(psi, system)
        for p, corrected in result.per_outcome:
            worst = max(worst, float(np.abs(corrected.amplitudes - target).max()))
            worst = max(worst, abs(p - 0.25))
    return worst <= 1e-12, f"corrected branches vs x*phi0 + y*phi1, dev = {worst:.2e}"


def check_clone_symmetry(cfg):
    rng = np.random.default_rng(cfg.seed + 13)
    system = tc.build_telecloning_state(tc.optimize_coeffs(TwoStateEnsemble(0.6)))
    worst = 0.0
    for _ in range(10):
        result = tc.teleclone(_random_state(rng, 1), system)
        worst = max(
            worst, float(np.abs(result.clone_b.elements - result.clone_c.elements).max())
        )
    return worst <= 1e-12, f"clone B vs clone C, max dev = {worst:.2e}"


def check_teleclone_faithfulness(cfg):
    worst = 0.0
    for t in (0.3, np.pi / 4, 1.2):
        ens = TwoStateEnsemble(t)
        coeffs = tc.optimize_coeffs(ens)
        via_protocol = tc.global_clone_fidelity(ens, coeffs)
        direct = 0.0
        for psi in make_states(ens):
            out = tc.apply_cloner(psi, coeffs)
            joint = partial_trace(out.density(), (1, 2))
            direct += 0.5 * fidelity(tensor(psi, psi), joint)
        worst = max(worst, abs(via_protocol - direct))
    return worst <= 1e-12, f"protocol vs direct cloner map, dev = {worst:.2e}"


def check_two_state_sweep(cfg):
    max_ent = -np.inf
    max_gap = -np.inf
    for t in np.linspace(0, np.pi / 2, 50):
        ens = TwoStateEnsemble(t)
        coeffs = tc.optimize_coeffs(ens)
        ent = tc.alice_receivers_entanglement(tc.build_telecloning_state(coeffs))
        f_tc = tc.global_clone_fidelity(ens, coeffs)
        f_opt = tc.optimal_global_fidelity(ens)
        if f_tc > f_opt + 1e-9:
            return False, f"sandwich violated at theta = {t}: {f_tc} > {f_opt}"
        max_ent = max(max_ent, ent)
        max_gap = max(max_gap, f_opt - f_tc)
    ok = max_ent < LOG2_3 and max_gap > 1e-3
    return ok, f"max entanglement {max_ent:.4f} < log2(3), max fidelity gap {max_gap:.4f}"


def check_source_entropy_value(cfg):
    s = source_entropy(TwoStateEnsemble(np.pi / 4))
    expected = 0.6008760366928562  # binary entropy of (1 + sin(pi/4))/2
    ok = abs(s - expected) <= 1e-9 and abs(s - 0.907) > 0.05
    return ok, f"entropy at pi/4 computes to {s:.6f} (binary entropy), not 0.907"


def check_joint_clones_matrix(cfg):
    closed = tc.joint_clones_closed_form(tc.universal_coeffs())
    s_closed = von_neumann_entropy(closed)
    system = tc.build_telecloning_state(tc.universal_coeffs())
    s_traced = von_neumann_entropy(partial_trace(system.state.density(), (2, 3)))
    ok = (
        abs(s_closed - 1.2075187496394215) <= 1e-9
        and abs(s_traced - LOG2_3) <= 1e-9
        and abs(s_closed - s_traced) > 0.3
    )
    return ok, (
        f"closed form entropy {s_closed:.4f} vs numeric trace {s_traced:.4f};"
        " the partial trace is the ground truth"
    )


CHECKS = (
    ("core-norm-preservation", check_norm_preservation),
    ("core-partial-trace-consistency", check_partial_trace_consistency),
    ("core-entropy-bounds", check_entropy_bounds),
    ("core-bell-completeness", check_bell_completeness),
    ("ensemble-entropy-decreasing", check_entropy_decreasing),
    ("ensemble-x-symmetry", check_ensemble_symmetry),
    ("ensemble-overlap-grid", check_overlap_grid),
    ("classical-strategy-ordering", check_classical_ordering),
    ("classical-optimized-symmetry", check_classical_symmetry),
    ("classical-fuchs-peres-coincidence", check_fuchs_peres_coincidence),
    ("classical-evaluator-consistency", check_evaluator_consistency),
    ("classical-guess-stationarity", check_stationarity),
    ("classical-unknown-state-mc", check_unknown_state_mc),
    ("channel-horodecki-identity", check_horodecki_identity),
    ("channel-combined-dominance", check_combined_dominance),
    ("channel-classical-crossover", check_crossover),
    ("channel-endpoint-reductions", check_endpoint_reductions),
    ("channel-monotonicity", check_monotonicity),
    ("protocol-oracle-agreement", check_oracle_agreement),
    ("protocol-mc-agreement", check_mc_agreement),
    ("protocol-haar-average", check_haar_average),
    ("protocol-reproducibility", check_reproducibility),
    ("protocol-probability-sanity", check_probability_sanity),
    ("teleclone-universal-values", check_universal_telecloning),
    ("teleclone-correction-exactness", check_correction_exactness),
    ("teleclone-clone-symmetry", check_clone_symmetry),
    ("teleclone-faithfulness", check_teleclone_faithfulness),
    ("teleclone-two-state-sweep", check_two_state_sweep),
    ("discrepancy-source-entropy", check_source_entropy_value),
    ("discrepancy-joint-clones-matrix", check_joint_clones_matrix),
)


@dataclass(frozen=True)
class VerifyConfig:
    samples: int = 1_000_000
    seed: int = 42
    tamper: bool = False


def run_checks(cfg: VerifyConfig):
    """Run every registered check; returns a list of CheckResult."""
    results = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn(cfg)
        except Exception as exc:  # a crash is a failure, not an abort
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(CheckResult(name=name, passed=bool(ok), detail=detail))
    return results
