"""Optimal universal state estimation on M identical copies.

The measurement is the continuous covariant family over pure states,

    P_phi = (M+1) |phi><phi|^⊗M dμ(phi) ,

complete on the symmetric subspace. Averages over the Bloch sphere are
trigonometric polynomials of known degree, so a Gauss-Legendre grid in
cos(theta) times a uniform grid in azimuth integrates them exactly; no
sampling error enters the exact path. The Monte Carlo path draws outcome
candidates by rejection against Haar proposals instead.

Estimating on M copies and preparing the candidate realizes cloning to
arbitrarily many copies; its single-qubit output is exactly the
reconstruction operator rho_bar, which shrinks the input Bloch vector by
M/(M+2).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .linalg import (
    PSD_TOL,
    bloch_of,
    haar_random_pure_batch,
    hermitize,
    pure_fidelity,
    rng_from_seed,
)
from .symspace import is_symmetric_support, project_dicke, tensor_power_dicke
from .cloner import CloneChannel, apply_cloner, tensor_power_input

EXACT_MAX_COPIES = 20
MC_MAX_COPIES = 12


@dataclass(frozen=True)
class EstimationReport:
    m_copies: int
    fidelity_measured: float
    fidelity_predicted: float      # (M+1)/(M+2)
    eta_measured: float
    eta_predicted: float           # M/(M+2)
    rho_bar: np.ndarray            # 1-qubit reconstruction operator
    mode: str                      # "exact-quadrature" | "monte-carlo"
    quadrature_order: int | None
    n_shots: int | None
    seed: int | None
    statistical_error: float


@dataclass(frozen=True)
class CompositionReport:
    """Cloner M→L composed with estimation on the L clones."""

    m_copies: int
    l_copies: int
    composed_fidelity: float
    predicted_fidelity: float      # (1 + eta(M,L) * eta_meas(L)) / 2
    direct_fidelity: float         # (M+1)/(M+2), the L-independent value


def _kahan_add(total, comp, term):
    y = term - comp
    t = total + y
    comp = (t - total) - y
    return t, comp


def kahan_sum(terms):
    """Compensated summation; order-independent to ~1e-16 relative."""
    total = 0.0
    comp = 0.0
    for term in terms:
        total, comp = _kahan_add(total, comp, term)
    return total


@lru_cache(maxsize=None)
def sphere_quadrature(m):
    """Nodes and weights exact for the degree arising at M = m copies.

    Returns (states, weights): states[i] is a pure qubit state, weights sum
    to 1 and integrate any Bloch-sphere polynomial of the relevant degree
    exactly against the Haar measure.
    """
    n_polar = (2 * m + 4 + 1) // 2 + 2
    n_azim = 2 * m + 5
    nodes, gw = np.polynomial.legendre.leggauss(n_polar)
    phis = 2 * np.pi * np.arange(n_azim) / n_azim
    thetas = np.arccos(nodes)
    c = np.cos(thetas / 2)[:, None]
    s = np.sin(thetas / 2)[:, None]
    amp0 = np.broadcast_to(c, (n_polar, n_azim))
    amp1 = s * np.exp(1j * phis)[None, :]
    states = np.stack([amp0.ravel(), amp1.ravel()], axis=1)
    weights = np.repeat(gw / 2 / n_azim, n_azim)
    states.flags.writeable = False
    weights.flags.writeable = False
    return states, weights


def povm_completeness_residual(m):
    """Max-entry deviation of ∫ (M+1)|phi^⊗M><phi^⊗M| dμ from the identity
    on the symmetric subspace (in Dicke coordinates)."""
    states, weights = sphere_quadrature(m)
    vecs = np.array([tensor_power_dicke(psi, m) for psi in states])
    acc = (m + 1) * np.einsum("i,ij,ik->jk", weights, vecs, vecs.conj())
    return float(np.max(np.abs(acc - np.eye(m + 1))))


def estimation_fidelity_exact(m, psi):
    """Exact-quadrature estimation fidelity for M copies of the pure state psi."""
    if not 1 <= m <= EXACT_MAX_COPIES:
        raise ValueError(f"m must be in 1..{EXACT_MAX_COPIES}, got {m}")
    psi = np.asarray(psi, dtype=complex)
    states, weights = sphere_quadrature(m)
    overlap2 = np.abs(states @ psi.conj()) ** 2
    terms = (m + 1) * weights * overlap2 ** (m + 1)
    fid = kahan_sum(terms)
    probs = (m + 1) * weights * overlap2 ** m
    rho_bar = np.einsum("i,ij,ik->jk", probs, states, states.conj())
    eta = 2 * fid - 1
    return EstimationReport(
        m_copies=m,
        fidelity_measured=float(fid),
        fidelity_predicted=(m + 1) / (m + 2),
        eta_measured=float(eta),
        eta_predicted=m / (m + 2),
        rho_bar=hermitize(rho_bar),
        mode="exact-quadrature",
        quadrature_order=len(weights),
        n_shots=None,
        seed=None,
        statistical_error=0.0,
    )


def sample_candidates(m, psi, n_shots, rng):
    """Draw outcome candidates from p(phi|psi) ∝ |<phi|psi>|^(2M).

    Rejection against Haar proposals with envelope constant M+1; acceptance
    probability is exactly |<phi|psi>|^(2M).
    """
    psi = np.asarray(psi, dtype=complex)
    out = np.empty((n_shots, 2), dtype=complex)
    filled = 0
    batch = max(1024, 2 * (m + 1) * min(n_shots, 1 << 16))
    guard = 0
    while filled < n_shots:
        guard += 1
        if guard > 10000:
            raise RuntimeError("rejection sampler failed to accept; invalid input?")
        props = haar_random_pure_batch(rng, batch)
        accept_p = np.abs(props @ psi.conj()) ** (2 * m)
        accepted = props[rng.random(batch) < accept_p]
        take = min(len(accepted), n_shots - filled)
        out[filled:filled + take] = accepted[:take]
        filled += take
    return out


def estimate_monte_carlo(m, psi, n_shots, seed):
    """Simulated measurement: n_shots candidate draws, empirical fidelity."""
    if not 1 <= m <= MC_MAX_COPIES:
        raise ValueError(f"m must be in 1..{MC_MAX_COPIES}, got {m}")
    if n_shots < 1:
        raise ValueError("n_shots must be >= 1")
    psi = np.asarray(psi, dtype=complex)
    rng = rng_from_seed(seed)
    cands = sample_candidates(m, psi, n_shots, rng)
    fids = np.abs(cands @ psi.conj()) ** 2
    fid = float(fids.mean())
    se = float(fids.std(ddof=1) / np.sqrt(n_shots)) if n_shots > 1 else 0.0
    rho_bar = np.einsum("ij,ik->jk", cands, cands.conj()) / n_shots
    return EstimationReport(
        m_copies=m,
        fidelity_measured=fid,
        fidelity_predicted=(m + 1) / (m + 2),
        eta_measured=2 * fid - 1,
        eta_predicted=m / (m + 2),
        rho_bar=hermitize(rho_bar),
        mode="monte-carlo",
        quadrature_order=None,
        n_shots=n_shots,
        seed=seed,
        statistical_error=se,
    )


def measure_and_prepare_channel(m, rho_m):
    """rho_bar = ∫ dμ(phi) Tr(P_phi rho_M) |phi><phi| by exact quadrature.

    The single-qubit output of measuring M copies and preparing candidates;
    scales the reduced input Bloch vector by M/(M+2).
    """
    rho_m = np.asarray(rho_m, dtype=complex)
    if rho_m.shape != (2 ** m,) * 2:
        raise ValueError(f"input shape {rho_m.shape} does not match m={m}")
    if not is_symmetric_support(rho_m, tol=PSD_TOL):
        raise ValueError("input must be supported on the symmetric subspace")
    coords = project_dicke(rho_m, m)
    states, weights = sphere_quadrature(m)
    vecs = np.array([tensor_power_dicke(psi, m) for psi in states])
    probs = (m + 1) * weights * np.einsum("ij,jk,ik->i", vecs.conj(), coords, vecs).real
    rho_bar = np.einsum("i,ij,ik->jk", probs, states, states.conj())
    return hermitize(rho_bar)


def verify_statement_b(m, l, psi=None):
    """Clone M→L, then measure-and-prepare on the L clones.

    The composed estimation fidelity is (1 + eta(M,L) * eta_meas(L)) / 2,
    which telescopes to (M+1)/(M+2) for every L.
    """
    if not 1 <= m <= l <= 10:
        raise ValueError(f"need 1 <= m <= l <= 10, got ({m}, {l})")
    if psi is None:
        psi = np.array([1.0, 0.0], dtype=complex)
    psi = np.asarray(psi, dtype=complex)
    rho_m = tensor_power_input(psi, m)
    ch = CloneChannel(m, l)
    rho_l = apply_cloner(ch, rho_m)
    rho_bar = measure_and_prepare_channel(l, rho_l)
    composed = pure_fidelity(psi, rho_bar)
    predicted = (1 + ch.eta_predicted * l / (l + 2)) / 2
    return CompositionReport(
        m_copies=m,
        l_copies=l,
        composed_fidelity=composed,
        predicted_fidelity=predicted,
        direct_fidelity=(m + 1) / (m + 2),
    )


def reconstruction_bloch(report):
    """Bloch vector of the reconstruction operator in a report."""
    return bloch_of(report.rho_bar)
