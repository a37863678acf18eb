"""
States, Stokes operators and gates for two-component BEC sites.

Entangling gates are diagonal in the Fock basis, so they are applied as
closed-form phase tables rather than by exponentiating Hamiltonians.
``becmbqc.dense`` keeps the explicit Hamiltonian route as a cross-check.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from math import comb, pi

import numpy as np

from .errors import NumericError, ValidationError
from .fock import Register, apply_pair_phase, apply_site_operator, pair_phase_table

SQRT_HALF = 1.0 / np.sqrt(2.0)
DEFAULT_TIME = pi / 4


@dataclass(frozen=True)
class CoherentSpec:
    """Single-particle amplitudes (alpha on a-dagger, beta on b-dagger)."""

    alpha: complex = SQRT_HALF
    beta: complex = SQRT_HALF

    def __post_init__(self):
        nrm = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(nrm - 1.0) > 1e-12:
            raise ValidationError(f"coherent spec not normalized: |alpha|^2+|beta|^2 = {nrm!r}")


PLUS = CoherentSpec(SQRT_HALF, SQRT_HALF)
MINUS = CoherentSpec(SQRT_HALF, -SQRT_HALF)
LOGICAL_ZERO = CoherentSpec(1.0, 0.0)
LOGICAL_ONE = CoherentSpec(0.0, 1.0)


class StokesAxis(enum.Enum):
    X = "x"
    Y = "y"
    Z = "z"


class GateKind(enum.Enum):
    RCZ = "rcz"
    LCZ = "lcz"


@dataclass(frozen=True)
class EdgeGate:
    """Diagonal entangling gate between two sites.

    For RCZ the Fock index of ``from_site`` sets the phase picked up by the
    b-mode (right-hand) component of ``to_site``; the orientation matters.
    LCZ is symmetric in its endpoints.
    """

    kind: GateKind
    from_site: int
    to_site: int
    time: float = DEFAULT_TIME

    def __post_init__(self):
        if self.from_site == self.to_site:
            raise ValidationError("edge gate endpoints must differ")
        if not isinstance(self.kind, GateKind):
            object.__setattr__(self, "kind", GateKind(str(self.kind).lower()))


def coherent_state(n_particles: int, spec: CoherentSpec) -> np.ndarray:
    """Amplitudes of (alpha a^+ + beta b^+)^N |vac> / sqrt(N!) in the Fock basis."""
    n = n_particles
    k = np.arange(n + 1)
    binom = np.sqrt([comb(n, int(kk)) for kk in k])
    alpha = complex(spec.alpha)
    beta = complex(spec.beta)
    # 0**0 == 1 is what we want at the edges
    return binom * np.power(alpha, k) * np.power(beta, n - k)


def fock_ket(n_particles: int, k: int) -> np.ndarray:
    if not 0 <= k <= n_particles:
        raise ValidationError(f"Fock index {k} out of range for N={n_particles}")
    v = np.zeros(n_particles + 1, dtype=complex)
    v[k] = 1.0
    return v


def _hopping(n_particles: int) -> np.ndarray:
    """Matrix of a^+ b: raises k by one with weight sqrt((k+1)(N-k))."""
    n = n_particles
    low = np.zeros((n + 1, n + 1), dtype=complex)
    for k in range(n):
        low[k + 1, k] = np.sqrt((k + 1) * (n - k))
    return low


def stokes_matrix(n_particles: int, axis: StokesAxis | str) -> np.ndarray:
    """Stokes operator S^x, S^y or S^z on the N-boson site.

    S^x = a^+b + b^+a, S^y = -i a^+b + i b^+a, S^z = a^+a - b^+b.
    """
    if n_particles < 0:
        raise ValidationError(f"negative particle number {n_particles}")
    axis = StokesAxis(axis.lower()) if isinstance(axis, str) else axis
    n = n_particles
    if axis is StokesAxis.Z:
        return np.diag(2.0 * np.arange(n + 1) - n).astype(complex)
    raise_ = _hopping(n)
    lower_ = raise_.T.copy()
    if axis is StokesAxis.X:
        return raise_ + lower_
    return -1j * raise_ + 1j * lower_


def expm_hermitian(generator: np.ndarray, t: float) -> np.ndarray:
    """exp(-i t G) for Hermitian G by eigendecomposition."""
    g = np.asarray(generator, dtype=complex)
    if np.max(np.abs(g - g.conj().T), initial=0.0) > 1e-12:
        raise ValidationError("generator is not Hermitian")
    try:
        evals, evecs = np.linalg.eigh(g)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigendecomposition failed: {exc}") from exc
    recon = (evecs * evals) @ evecs.conj().T
    if np.max(np.abs(recon - g), initial=0.0) > 1e-10 * max(1.0, np.max(np.abs(g))):
        raise NumericError("eigendecomposition does not reconstruct the generator")
    return (evecs * np.exp(-1j * t * evals)) @ evecs.conj().T


def hadamard_bec(n_particles: int) -> np.ndarray:
    """exp(-i 3pi/4 S^y).

    Sends |1/sqrt2, 1/sqrt2>> to (-1)^N |1,0>> and |1/sqrt2, -1/sqrt2>> to
    |0,1>>. The relative sign (-1)^N is physical; callers comparing against
    phase-free forms must account for it.
    """
    if n_particles < 1:
        raise ValidationError("BEC Hadamard needs N >= 1")
    u = expm_hermitian(stokes_matrix(n_particles, StokesAxis.Y), 3 * pi / 4)
    err = np.max(np.abs(u.conj().T @ u - np.eye(n_particles + 1)))
    if err > 1e-10:
        raise NumericError(f"BEC Hadamard not unitary (deviation {err:.2e})")
    return u


def rcz_phase(k_from: int, k_to: int, n_to: int, t: float = DEFAULT_TIME) -> complex:
    """Eigenvalue of exp(-i t H1') on |k_from>|k_to>; H1' eigenvalue is 4 k_from (N_to - k_to)."""
    return complex(np.exp(-1j * t * 4 * k_from * (n_to - k_to)))


def lcz_phase(k_from: int, k_to: int, t: float = DEFAULT_TIME) -> complex:
    """Eigenvalue of exp(-i t H2') on |k_from>|k_to>; H2' eigenvalue is 4 k_from k_to."""
    return complex(np.exp(-1j * t * 4 * k_from * k_to))


def edge_phase_table(gate: EdgeGate, n_from: int, n_to: int) -> np.ndarray:
    """Phase table indexed [k_from, k_to]."""
    if gate.kind is GateKind.RCZ:
        fn = lambda kf, kt: rcz_phase(kf, kt, n_to, gate.time)  # noqa: E731
    else:
        fn = lambda kf, kt: lcz_phase(kf, kt, gate.time)  # noqa: E731
    return pair_phase_table(n_from, n_to, fn)


def apply_edge(r: Register, gate: EdgeGate) -> Register:
    f, t = gate.from_site, gate.to_site
    for s in (f, t):
        if not 0 <= s < r.n_sites:
            raise ValidationError(f"edge endpoint {s} out of range for {r.n_sites}-site register")
    table = edge_phase_table(gate, r.dims[f], r.dims[t])
    return apply_pair_phase(r, f, t, table)


def rcz(r: Register, from_site: int, to_site: int, t: float = DEFAULT_TIME) -> Register:
    return apply_edge(r, EdgeGate(GateKind.RCZ, from_site, to_site, t))


def lcz(r: Register, i: int, j: int, t: float = DEFAULT_TIME) -> Register:
    return apply_edge(r, EdgeGate(GateKind.LCZ, i, j, t))


def zz_evolution(r: Register, i: int, j: int, t: float) -> Register:
    """exp(-i t S^z_i S^z_j)."""
    ni, nj = r.dims[i], r.dims[j]
    return apply_pair_phase(
        r, i, j, lambda ki, kj: np.exp(-1j * t * (2 * ki - ni) * (2 * kj - nj))
    )


def legacy_cz(r: Register, i: int, j: int) -> Register:
    """Equal-N r-CZ at t = pi/(4N), ``i`` being the Fock-index side."""
    if r.dims[i] != r.dims[j]:
        raise ValidationError(
            f"legacy CZ needs equal particle numbers, got {r.dims[i]} and {r.dims[j]}"
        )
    n = r.dims[i]
    if n < 1:
        raise ValidationError("legacy CZ needs N >= 1")
    return rcz(r, i, j, pi / (4 * n))


def apply_hadamard(r: Register, site: int) -> Register:
    return apply_site_operator(r, site, hadamard_bec(r.dims[site]))
