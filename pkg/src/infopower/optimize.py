"""Haar sampling and multi-start optimization over pure states.

The state searches run Riemannian steepest descent on the unit sphere:
Euclidean gradient projected onto the tangent space, normalization
retraction, backtracking (Armijo) line search. The informational-power
search alternates that with a multiplicative prior reweighting, see-saw
style. Every routine is deterministic for a fixed seed; each start owns a
private PRNG stream derived from (seed, start index).
"""

from dataclasses import dataclass

import numpy as np

from . import hilbert
from .errors import InvalidDimension, InvalidPovm
from .infotheory import _entropy_bits
from .states import Povm

CONV_TOL = 1e-10
GRAD_TOL = 1e-8
MAX_ITER = 200
_ARMIJO_C = 1e-4
_ARMIJO_SHRINK = 0.5
_MIN_STEP = 1e-16
_LOG_FLOOR = 1e-18

RNG_ALGORITHM = "pcg64"


class HaarSampler:
    """Deterministic stream of Haar-uniform pure states in a fixed dimension."""

    def __init__(self, dim: int, seed: int):
        if dim < 1:
            raise InvalidDimension(f"dimension {dim} < 1")
        self.dim = dim
        self.seed = seed
        self._rng = np.random.Generator(np.random.PCG64(seed))

    def state(self) -> np.ndarray:
        """One normalized vector of independent standard complex Gaussians."""
        z = self._rng.normal(size=self.dim) + 1j * self._rng.normal(size=self.dim)
        return z / np.linalg.norm(z)

    def states(self, n: int) -> np.ndarray:
        """n x dim array of independent Haar samples."""
        z = self._rng.normal(size=(n, self.dim)) + 1j * self._rng.normal(
            size=(n, self.dim)
        )
        return z / np.linalg.norm(z, axis=1, keepdims=True)


def haar_state(sampler: HaarSampler) -> np.ndarray:
    """Draw the next Haar-uniform pure state from the sampler's stream."""
    return sampler.state()


@dataclass
class OptimizationReport:
    """Outcome of a multi-start search, with enough metadata to reproduce it."""

    best_value: float
    best_states: list  # (weight, amplitude vector) pairs
    starts: int
    converged_starts: int
    iterations_per_start: list
    values_per_start: list
    seed: int
    tolerance_used: float
    rng_algorithm: str = RNG_ALGORITHM
    any_zero_weight: bool = False

    def to_json_dict(self) -> dict:
        return {
            "best_value": self.best_value,
            "best_states": [
                {"weight": w, "amplitudes": [[z.real, z.imag] for z in v]}
                for w, v in self.best_states
            ],
            "starts": self.starts,
            "converged_starts": self.converged_starts,
            "iterations_per_start": self.iterations_per_start,
            "values_per_start": self.values_per_start,
            "seed": self.seed,
            "tolerance_used": self.tolerance_used,
            "rng_algorithm": self.rng_algorithm,
            "any_zero_weight": self.any_zero_weight,
        }


def _start_rngs(seed: int, starts: int):
    return [
        np.random.Generator(np.random.PCG64(child))
        for child in np.random.SeedSequence(seed).spawn(starts)
    ]


def _haar_from_rng(rng, dim: int, n: int = 1) -> np.ndarray:
    z = rng.normal(size=(n, dim)) + 1j * rng.normal(size=(n, dim))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def _outcome_probs(effects: np.ndarray, psi: np.ndarray) -> np.ndarray:
    return np.clip(np.einsum("yij,i,j->y", effects, psi.conj(), psi).real, 0.0, None)


def _project_tangent(psi: np.ndarray, g: np.ndarray) -> np.ndarray:
    return g - np.real(np.vdot(psi, g)) * psi


def output_entropy_gradient(p: Povm, psi) -> np.ndarray:
    """Riemannian gradient of the outcome entropy at a pure state."""
    psi = hilbert.check_state_vector(psi)
    effects = p.stack()
    q = _outcome_probs(effects, psi)
    coef = -(np.log2(np.maximum(q, _LOG_FLOOR)) + 1.0 / np.log(2))
    g = 2.0 * np.einsum("y,yij,j->i", coef, effects, psi)
    return _project_tangent(psi, g)


def _riemannian_descent(objective, gradient, psi, trace=None):
    """Minimize objective over the unit sphere from psi.

    Returns (state, value, iterations, converged). If trace is a list, the
    objective value after every accepted step is appended to it.
    """
    value = objective(psi)
    if trace is not None:
        trace.append(value)
    for it in range(1, MAX_ITER + 1):
        g = _project_tangent(psi, gradient(psi))
        gnorm = np.linalg.norm(g)
        if gnorm < GRAD_TOL:
            return psi, value, it - 1, True
        step = 1.0
        accepted = False
        while step > _MIN_STEP:
            cand = psi - step * g
            cand /= np.linalg.norm(cand)
            cand_value = objective(cand)
            if cand_value <= value - _ARMIJO_C * step * gnorm**2:
                accepted = True
                break
            step *= _ARMIJO_SHRINK
        if not accepted:
            return psi, value, it - 1, True
        decrease = value - cand_value
        psi, value = cand, cand_value
        if trace is not None:
            trace.append(value)
        if decrease < CONV_TOL:
            return psi, value, it, True
    return psi, value, MAX_ITER, False


def min_output_entropy(p: Povm, starts: int = 100, seed: int = 0) -> OptimizationReport:
    """Multi-start minimization of the outcome entropy H(Y|X=x) over pure states."""
    if starts < 1:
        raise InvalidPovm("starts must be >= 1")
    effects = p.stack()

    def objective(psi):
        return _entropy_bits(_outcome_probs(effects, psi))

    def gradient(psi):
        q = _outcome_probs(effects, psi)
        coef = -(np.log2(np.maximum(q, _LOG_FLOOR)) + 1.0 / np.log(2))
        return 2.0 * np.einsum("y,yij,j->i", coef, effects, psi)

    best_value, best_state = np.inf, None
    iterations, values, converged_count = [], [], 0
    for rng in _start_rngs(seed, starts):
        psi0 = _haar_from_rng(rng, p.dim)[0]
        psi, value, iters, converged = _riemannian_descent(objective, gradient, psi0)
        iterations.append(iters)
        values.append(value)
        converged_count += converged
        if value < best_value:
            best_value, best_state = value, psi
    return OptimizationReport(
        best_value=float(best_value),
        best_states=[(1.0, best_state)],
        starts=starts,
        converged_starts=converged_count,
        iterations_per_start=iterations,
        values_per_start=values,
        seed=seed,
        tolerance_used=CONV_TOL,
    )


def _mutual_information_bits(weights: np.ndarray, cond: np.ndarray) -> float:
    """I(X;Y) in bits from a prior and a conditional outcome matrix."""
    joint = weights[:, None] * cond
    q = joint.sum(axis=0)
    mask = joint > _LOG_FLOOR
    ratio = np.where(mask, cond / np.maximum(q[None, :], _LOG_FLOOR), 1.0)
    return float(np.sum(np.where(mask, joint * np.log2(ratio), 0.0)))


def _reweight_prior(
    weights: np.ndarray, cond: np.ndarray, max_sweeps: int = 60
) -> np.ndarray:
    """Multiplicative capacity-style prior update.

    Each sweep multiplies every weight by exp of the divergence of its
    conditional from the current outcome marginal; truncated at max_sweeps
    since the surrounding see-saw reinvokes it every outer iteration.
    """
    w = weights.copy()
    logc = np.where(cond > _LOG_FLOOR, np.log(np.maximum(cond, _LOG_FLOOR)), 0.0)
    c_logc = np.einsum("xy,xy->x", cond, logc)
    for _ in range(max_sweeps):
        q = w @ cond
        kl = c_logc - cond @ np.log(np.maximum(q, _LOG_FLOOR))
        new = w * np.exp(kl)
        new /= new.sum()
        delta = np.max(np.abs(new - w))
        w = new
        if delta < CONV_TOL:
            break
    return w


def _is_trivial_povm(p: Povm) -> bool:
    return all(
        np.max(np.abs(eff - np.trace(eff).real / p.dim * np.eye(p.dim))) < 1e-12
        for eff in p.effects
    )


def informational_power_lower_bound(
    p: Povm, starts: int = 100, seed: int = 0, max_support: int | None = None
) -> OptimizationReport:
    """Certified lower bound on the informational power of a POVM.

    See-saw over ensembles of at most max_support (default d^2) pure states:
    alternate a multiplicative prior reweighting with per-state Riemannian
    ascent of the mutual information, multi-started over Haar seeds. The
    returned best_value is the mutual information of the reported ensemble,
    recomputed from the final states and weights.
    """
    if starts < 1:
        raise InvalidPovm("starts must be >= 1")
    d = p.dim
    m = max_support if max_support is not None else d * d
    if m < 1:
        raise InvalidPovm("max_support must be >= 1")
    effects = p.stack()

    if _is_trivial_povm(p):
        # every effect proportional to the identity: no state carries information
        e0 = np.zeros(d, dtype=complex)
        e0[0] = 1.0
        return OptimizationReport(
            best_value=0.0,
            best_states=[(1.0, e0)],
            starts=starts,
            converged_starts=starts,
            iterations_per_start=[0] * starts,
            values_per_start=[0.0] * starts,
            seed=seed,
            tolerance_used=CONV_TOL,
        )

    def conditionals(psis):
        return np.clip(
            np.einsum("yij,xi,xj->xy", effects, psis.conj(), psis).real, 0.0, None
        )

    best_value, best_states, best_weights = -np.inf, None, None
    iterations, values, converged_count = [], [], 0
    for rng in _start_rngs(seed, starts):
        psis = _haar_from_rng(rng, d, m)
        weights = np.full(m, 1.0 / m)
        cond = conditionals(psis)
        value = _mutual_information_bits(weights, cond)
        converged = False
        outer = 0
        augmentations = 0
        for outer in range(1, MAX_ITER + 1):
            weights = _reweight_prior(weights, cond)
            for x in range(m):
                psis, cond = _ascend_state(effects, psis, cond, weights, x)
            new_value = _mutual_information_bits(weights, cond)
            if new_value - value < CONV_TOL:
                value = max(new_value, value)
                # first-order optimality: every pure state must satisfy
                # D(q_phi || q_bar) <= I; inject any violating state found
                phi, divergence = _best_divergent_state(
                    effects, weights @ cond, rng, d
                )
                if divergence > value + 10 * CONV_TOL and augmentations < 20:
                    augmentations += 1
                    x = int(np.argmin(weights))
                    psis = psis.copy()
                    psis[x] = phi
                    weights = weights.copy()
                    weights[x] = max(weights[x], 0.05)
                    weights /= weights.sum()
                    cond = conditionals(psis)
                    value = _mutual_information_bits(weights, cond)
                    continue
                converged = True
                break
            value = new_value
        iterations.append(outer)
        values.append(value)
        converged_count += converged
        if value > best_value:
            best_value = value
            best_states = psis.copy()
            best_weights = weights.copy()
    return OptimizationReport(
        best_value=float(best_value),
        best_states=list(zip(best_weights.tolist(), best_states)),
        starts=starts,
        converged_starts=converged_count,
        iterations_per_start=iterations,
        values_per_start=values,
        seed=seed,
        tolerance_used=CONV_TOL,
        any_zero_weight=bool(np.any(best_weights < _LOG_FLOOR)),
    )


def _best_divergent_state(effects, q_bar, rng, dim, restarts=3):
    """Pure state maximizing the divergence of its outcome distribution from
    a fixed outcome marginal, found by multi-start sphere descent."""
    q_bar = np.maximum(q_bar, _LOG_FLOOR)

    def objective(phi):
        q = _outcome_probs(effects, phi)
        mask = q > _LOG_FLOOR
        return -float(
            np.sum(np.where(mask, q * np.log2(np.maximum(q, _LOG_FLOOR) / q_bar), 0.0))
        )

    def gradient(phi):
        q = _outcome_probs(effects, phi)
        coef = np.log2(np.maximum(q, _LOG_FLOOR) / q_bar) + 1.0 / np.log(2)
        return -2.0 * np.einsum("y,yij,j->i", coef, effects, phi)

    best_div, best_phi = -np.inf, None
    for _ in range(restarts):
        phi0 = _haar_from_rng(rng, dim)[0]
        phi, neg_div, _, _ = _riemannian_descent(objective, gradient, phi0)
        if -neg_div > best_div:
            best_div, best_phi = -neg_div, phi
    return best_phi, best_div


def _ascend_state(effects, psis, cond, weights, x):
    """One backtracking ascent step of the mutual information in state x."""
    wx = weights[x]
    if wx < _LOG_FLOOR:
        return psis, cond
    value = _mutual_information_bits(weights, cond)
    q = weights @ cond
    coef = wx * np.log2(
        np.maximum(cond[x], _LOG_FLOOR) / np.maximum(q, _LOG_FLOOR)
    )
    g = 2.0 * np.einsum("y,yij,j->i", coef, effects, psis[x])
    g = _project_tangent(psis[x], g)
    gnorm = np.linalg.norm(g)
    if gnorm < GRAD_TOL:
        return psis, cond
    step = 1.0
    while step > _MIN_STEP:
        cand = psis[x] + step * g
        cand /= np.linalg.norm(cand)
        new_cond = cond.copy()
        new_cond[x] = np.clip(
            np.einsum("yij,i,j->y", effects, cand.conj(), cand).real, 0.0, None
        )
        if (
            _mutual_information_bits(weights, new_cond)
            >= value + _ARMIJO_C * step * gnorm**2
        ):
            psis = psis.copy()
            psis[x] = cand
            return psis, new_cond
        step *= _ARMIJO_SHRINK
    return psis, cond


def scrooge_lower_bound_estimate(d: int, samples: int, seed: int = 0) -> float:
    """Monte-Carlo estimate of the uniform-measurement information floor.

    Measures an ensemble of `samples` Haar states with the computational
    basis; the mutual information converges to
    log2(d) - (1/ln 2) sum_{n=2}^d 1/n as the sample count grows.
    """
    if d < 2:
        raise InvalidDimension(f"dimension {d} < 2")
    if samples < d * d:
        raise InvalidDimension(f"need at least d^2 = {d * d} samples")
    sampler = HaarSampler(d, seed)
    psis = sampler.states(samples)
    q = np.abs(psis) ** 2
    q_mean = q.mean(axis=0)
    per_state = -np.sum(np.where(q > _LOG_FLOOR, q * np.log2(np.maximum(q, _LOG_FLOOR)), 0.0), axis=1)
    value = _entropy_bits(q_mean) - float(per_state.mean())
    return max(value, 0.0)


def uniform_povm_approximant(d: int, n: int, seed: int = 0) -> Povm:
    """Finite n-outcome stand-in for the Haar-uniform continuous POVM.

    Draws n Haar states, forms S = sum |psi><psi|, and returns the effects
    S^{-1/2}|psi><psi|S^{-1/2}; the orbit sums to the identity exactly.
    """
    if n < d:
        raise InvalidDimension(f"need at least d = {d} outcomes")
    sampler = HaarSampler(d, seed)
    psis = sampler.states(n)
    s = psis.T @ psis.conj()
    balance = hilbert.op_inv_sqrt(s)
    rotated = psis @ balance.T
    return Povm([np.outer(v, v.conj()) for v in rotated])
