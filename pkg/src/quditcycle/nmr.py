"""Quadrupolar NMR physics for a single spin: operators, Hamiltonians, pulses.

Units and conventions (hbar = 1 throughout):

- All frequencies are angular (rad/s).  A quoted "nu_Q = 10 kHz" enters as
  quad_freq = 2 pi * 1e4.
- Spin operators are written in the |s, m> basis ordered m = s, s-1, .., -s,
  so for s = 3/2 the four levels map to qudit labels |1>..|4>.
- The static Hamiltonian is H = -w_L I_z + (w_Q / 6) (3 I_z^2 - I^2).
  On resonance in the rotating frame the Zeeman term drops out and only the
  quadrupolar part remains; for s = 3/2 that is
  diag(+w_Q/2, -w_Q/2, -w_Q/2, +w_Q/2).
- An rf pulse adds w_1 (I_x cos phi + I_y sin phi) while it is on.

Propagators are built by eigendecomposition of the (Hermitian) Hamiltonian,
which is exact at these matrix sizes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import basis_state, check_dim


def spin_operators(s: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (I_x, I_y, I_z) for spin quantum number s in {1/2, 1, 3/2, ...}.

    Built from the ladder operators with the standard matrix elements
    <m+-1| I_+- |m> = sqrt(s(s+1) - m(m +- 1)).
    """
    twice = round(2 * s)
    if abs(2 * s - twice) > 1e-9 or twice < 1:
        raise ValueError(f"spin must be a positive half-integer, got {s}")
    s = twice / 2.0
    dim = twice + 1
    m = s - np.arange(dim)  # m = s .. -s
    iz = np.diag(m).astype(complex)
    # I_+ connects |m> to |m+1>: one diagonal above the main one.
    raising = np.zeros((dim, dim), dtype=complex)
    for k in range(1, dim):
        mm = m[k]  # source level
        raising[k - 1, k] = np.sqrt(s * (s + 1) - mm * (mm + 1))
    lowering = raising.conj().T
    ix = (raising + lowering) / 2
    iy = (raising - lowering) / 2j
    return ix, iy, iz


@dataclass(frozen=True)
class SpinSystem:
    """A nucleus in a strong field with a first-order quadrupolar splitting.

    Defaults describe the spin-3/2 system the protocol targets: Larmor
    frequency around 2 pi * 105.8 MHz and quadrupolar splitting
    2 pi * 10 kHz.  The Zeeman term must dominate (|w_L| >= 100 |w_Q|)
    for the rotating-frame treatment to be honest.
    """

    spin: float = 1.5
    larmor_freq: float = 2 * np.pi * 105.8e6
    quad_freq: float = 2 * np.pi * 10e3

    def __post_init__(self):
        twice = round(2 * self.spin)
        if abs(2 * self.spin - twice) > 1e-9 or twice < 1:
            raise ValueError(f"spin must be a positive half-integer, got {self.spin}")
        if abs(self.larmor_freq) < 100 * abs(self.quad_freq):
            raise ValueError(
                "Zeeman term must dominate: need |larmor_freq| >= 100 |quad_freq|"
            )

    @property
    def dim(self) -> int:
        return round(2 * self.spin) + 1


def static_hamiltonian(sys: SpinSystem, frame: str = "rotating") -> np.ndarray:
    """Drift Hamiltonian in rad/s, in the lab or the on-resonance rotating frame."""
    if frame not in ("lab", "rotating"):
        raise ValueError(f"frame must be 'lab' or 'rotating', got {frame!r}")
    _, _, iz = spin_operators(sys.spin)
    s = round(2 * sys.spin) / 2.0
    itotal = s * (s + 1) * np.eye(sys.dim, dtype=complex)
    h = (sys.quad_freq / 6.0) * (3 * (iz @ iz) - itotal)
    if frame == "lab":
        h = h - sys.larmor_freq * iz
    return h


@dataclass(frozen=True)
class PulseSegment:
    """One constant-amplitude rf segment.

    amplitude: rf strength w_1 in rad/s (>= 0)
    phase:     rf phase phi in radians
    duration:  length in seconds (> 0)
    """

    amplitude: float
    phase: float
    duration: float

    def __post_init__(self):
        if not np.isfinite(self.amplitude) or self.amplitude < 0:
            raise ValueError(f"amplitude must be finite and >= 0, got {self.amplitude}")
        if not np.isfinite(self.phase):
            raise ValueError("phase must be finite")
        if not np.isfinite(self.duration) or self.duration <= 0:
            raise ValueError(f"duration must be finite and > 0, got {self.duration}")


def _propagator(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i h t) for Hermitian h via eigendecomposition (exact at 4x4)."""
    evals, vecs = np.linalg.eigh(h)
    return (vecs * np.exp(-1j * evals * t)) @ vecs.conj().T


def pulse_propagator(sys: SpinSystem, seg: PulseSegment) -> np.ndarray:
    """Propagator of one rf segment in the rotating frame.

    H = H_quad + w_1 (I_x cos phi + I_y sin phi), constant over the segment.
    """
    ix, iy, _ = spin_operators(sys.spin)
    h = static_hamiltonian(sys, "rotating")
    h = h + seg.amplitude * (ix * np.cos(seg.phase) + iy * np.sin(seg.phase))
    return _propagator(h, seg.duration)


def sequence_propagator(sys: SpinSystem, segments) -> np.ndarray:
    """Time-ordered product of segment propagators (first segment acts first)."""
    u = np.eye(sys.dim, dtype=complex)
    for seg in segments:
        u = pulse_propagator(sys, seg) @ u
    return u


@dataclass(frozen=True)
class PseudoPureSpec:
    """Pseudo-pure preparation: rho = (1 - eps)/d * 1 + eps |i><i|."""

    basis_index: int
    epsilon: float = 1e-5

    def __post_init__(self):
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon must be in [0, 1], got {self.epsilon}")


def pseudo_pure(spec: PseudoPureSpec, dim: int) -> np.ndarray:
    """Density matrix of the pseudo-pure state described by spec."""
    d = check_dim(dim)
    ket = basis_state(d, spec.basis_index)
    return (1.0 - spec.epsilon) / d * np.eye(d, dtype=complex) + spec.epsilon * np.outer(
        ket, ket.conj()
    )


def transition_frequencies(sys: SpinSystem, frame: str = "lab") -> np.ndarray:
    """Single-quantum transition frequencies |E(m-1) - E(m)|, sorted ascending.

    In the lab frame a spin-3/2 shows the familiar triplet
    (w_L - w_Q, w_L, w_L + w_Q).
    """
    h = static_hamiltonian(sys, frame)
    energies = np.diag(h).real  # H is diagonal in the I_z basis
    return np.sort(np.abs(np.diff(energies)))


def inject_readout_noise(rho: np.ndarray, sigma: float = 0.01, seed: int | None = None) -> np.ndarray:
    """Emulate tomography-style readout errors on a density matrix.

    Adds a Hermitian perturbation whose elements have standard deviation
    sigma * max|rho|, then projects back onto the original trace (the
    traceful part of the perturbation is subtracted, the usual trace
    restoration in tomography postprocessing).  At the default sigma the
    element-wise deviation stays well below 6% of the largest element: the
    cap sits almost 7 standard deviations out.  The output may have small
    negative eigenvalues, as real reconstructed matrices do, so validate it
    with check_psd=False.
    """
    a = np.asarray(rho, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if sigma < 0:
        raise ValueError(f"sigma must be >= 0, got {sigma}")
    d = a.shape[0]
    scale = sigma * float(np.max(np.abs(a)))
    rng = np.random.default_rng(seed)
    g = rng.normal(0.0, scale, a.shape) + 1j * rng.normal(0.0, scale, a.shape)
    pert = (g + g.conj().T) / 2
    pert -= (np.trace(pert).real / d) * np.eye(d)
    return a + pert
