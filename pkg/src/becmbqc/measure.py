"""
Parity-basis measurements, logical projection and particle removal.

The even/odd kets carry the binomial weights sqrt(C(N,k)); with those
weights the measurement basis |e> +/- e^{i phi}|o> makes the protocol
outcomes come out in closed form. A measurement is treated as the
three-outcome POVM {+, -, leak}, where leak is whatever weight lies outside
the two-dimensional span of the basis pair.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Sequence

import numpy as np

from .errors import ValidationError, ZeroProbabilityError
from .fock import ATOL, Register, contract_site

ZERO_PROB = 1e-12


@dataclass(frozen=True)
class ParityBasisSpec:
    phase: float = 0.0
    sign: int = +1

    def __post_init__(self):
        if self.sign not in (+1, -1):
            raise ValidationError(f"parity basis sign must be +1 or -1, got {self.sign!r}")
        object.__setattr__(self, "phase", float(self.phase) % (2 * np.pi))


@dataclass(frozen=True)
class ParityOutcome:
    site: int
    spec: ParityBasisSpec
    probability: float
    leak: float
    probability_other: float
    sampled: bool = False

    def as_dict(self) -> dict:
        return {
            "site": self.site,
            "phase": self.spec.phase,
            "sign": "+" if self.spec.sign > 0 else "-",
            "probability": self.probability,
            "probability_other": self.probability_other,
            "leak": self.leak,
            "sampled": self.sampled,
        }


@dataclass(frozen=True)
class LogicalState:
    """Amplitudes over the logical basis of one or more sites.

    Bit 0 is |0~> = |1,0>> (all bosons in a, k = N) and bit 1 is
    |1~> = |0,1>> (all in b, k = 0). ``amplitudes`` is normalized and
    ordered with the first projected site as the most significant bit.
    """

    amplitudes: np.ndarray
    residual: float = 0.0
    weight: float = 1.0
    sites: tuple[int, ...] = field(default=(0,))

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_qubits(self) -> int:
        return int(round(np.log2(self.amplitudes.size)))

    @property
    def amp0(self) -> complex:
        return complex(self.amplitudes[0])

    @property
    def amp1(self) -> complex:
        return complex(self.amplitudes[1])

    def fidelity(self, other: "LogicalState") -> float:
        return float(min(1.0, abs(np.vdot(self.amplitudes, other.amplitudes)) ** 2))

    @classmethod
    def from_amplitudes(cls, amps, **kw) -> "LogicalState":
        amps = np.asarray(amps, dtype=complex).reshape(-1)
        nrm = np.linalg.norm(amps)
        if nrm < ATOL:
            raise ValidationError("logical state with zero norm")
        n = int(round(np.log2(amps.size)))
        kw.setdefault("sites", tuple(range(n)))
        return cls(amps / nrm, **kw)


def _binomial_weights(n: int) -> np.ndarray:
    return np.sqrt(np.array([comb(n, k) for k in range(n + 1)], dtype=float))


def parity_ket(n_particles: int, parity: str | int) -> np.ndarray:
    """Normalized binomially weighted even (parity 0) or odd (parity 1) ket."""
    p = {"even": 0, "odd": 1, "e": 0, "o": 1}.get(parity, parity)
    if p not in (0, 1):
        raise ValidationError(f"parity must be even or odd, got {parity!r}")
    n = n_particles
    if n < 0 or (n == 0 and p == 1):
        raise ValidationError(f"no {'odd' if p else 'even'} parity ket for N={n}")
    w = _binomial_weights(n)
    w[np.arange(n + 1) % 2 != p] = 0.0
    return (w / np.linalg.norm(w)).astype(complex)


def parity_basis_vector(n_particles: int, spec: ParityBasisSpec) -> np.ndarray:
    """(|e> + sign e^{i phase} |o>) / sqrt2 with normalized parity kets."""
    if n_particles < 1:
        raise ValidationError("parity measurement needs N >= 1")
    e = parity_ket(n_particles, 0)
    o = parity_ket(n_particles, 1)
    return (e + spec.sign * np.exp(1j * spec.phase) * o) / np.sqrt(2)


def measure_parity(
    r: Register,
    site: int,
    phase: float = 0.0,
    sign: int | None = +1,
    rng: np.random.Generator | None = None,
) -> tuple[Register, ParityOutcome]:
    """Measure ``site`` in the basis |e> +/- e^{i phase}|o> and drop it.

    With ``sign`` given the outcome is post-selected. With ``sign=None`` the
    sign is drawn from ``rng`` according to the Born weights of the two basis
    outcomes, conditioned on not leaking.

    Raises ZeroProbabilityError if the selected branch has probability
    below 1e-12; such a branch is never renormalized.
    """
    n = r.dims[site]
    total = r.norm() ** 2
    if total < ATOL:
        raise ValidationError("cannot measure a zero register")
    branches = {}
    probs = {}
    for s in (+1, -1):
        spec = ParityBasisSpec(phase, s)
        reduced = contract_site(r, site, parity_basis_vector(n, spec))
        branches[s] = reduced
        probs[s] = reduced.norm() ** 2 / total
    leak = max(0.0, 1.0 - probs[+1] - probs[-1])

    sampled = sign is None
    if sampled:
        if rng is None:
            raise ValidationError("sampling a measurement needs a random generator")
        inside = probs[+1] + probs[-1]
        if inside < ZERO_PROB:
            raise ZeroProbabilityError(f"site {site}: no weight in the parity basis span", inside)
        sign = +1 if rng.random() < probs[+1] / inside else -1
    elif sign not in (+1, -1):
        raise ValidationError(f"sign must be +1 or -1, got {sign!r}")

    p = probs[sign]
    if p < ZERO_PROB:
        label = "+" if sign > 0 else "-"
        raise ZeroProbabilityError(
            f"site {site}: post-selected branch {label} has probability {p:.3e}", p
        )
    outcome = ParityOutcome(
        site=site,
        spec=ParityBasisSpec(phase, sign),
        probability=float(min(1.0, p)),
        leak=float(leak),
        probability_other=float(min(1.0, probs[-sign])),
        sampled=sampled,
    )
    return branches[sign].normalized(), outcome


def logical_project(r: Register, sites: Sequence[int] | None = None) -> LogicalState:
    """Project every site of ``r`` onto the logical basis {|k=N>, |k=0>}.

    ``sites`` only reorders the logical bits; all sites must be listed.
    Other sites must be measured or contracted away first.
    """
    order = tuple(range(r.n_sites)) if sites is None else tuple(sites)
    if sorted(order) != list(range(r.n_sites)):
        raise ValidationError(
            f"logical projection must cover all {r.n_sites} sites, got {order}"
        )
    for s in order:
        if r.dims[s] < 1:
            raise ValidationError(f"site {s} has no particles; logical basis undefined")
    psi = np.transpose(r.tensor(), order)
    dims = [r.dims[s] for s in order]
    index = np.ix_(*[[n, 0] for n in dims])
    logical = psi[index].reshape(-1)
    total = r.norm() ** 2
    weight = float(np.linalg.norm(logical) ** 2 / total)
    if weight < ZERO_PROB:
        raise ZeroProbabilityError("state has no weight in the logical subspace", weight)
    logical = logical / np.linalg.norm(logical)
    # global phase carries no information; make the leading amplitude real positive
    lead = logical[np.argmax(np.abs(logical) > 1e-9)]
    logical = logical * (abs(lead) / lead)
    return LogicalState(
        amplitudes=logical,
        residual=float(max(0.0, 1.0 - weight)),
        weight=weight,
        sites=order,
    )


def annihilation(n_particles: int, mode: str) -> np.ndarray:
    """Matrix of a or b from the N-boson space to the (N-1)-boson space."""
    n = n_particles
    if n < 1:
        raise ValidationError("cannot remove a particle from an empty site")
    m = np.zeros((n, n + 1), dtype=complex)
    if mode == "a":
        for k in range(1, n + 1):
            m[k - 1, k] = np.sqrt(k)
    elif mode == "b":
        for k in range(n):
            m[k, k] = np.sqrt(n - k)
    else:
        raise ValidationError(f"removal mode must be 'a' or 'b', got {mode!r}")
    return m


def remove_particle(r: Register, site: int, mode: str = "a") -> Register:
    """Apply the a- or b-mode annihilation operator to ``site`` and renormalize."""
    if not 0 <= site < r.n_sites:
        raise ValidationError(f"site {site} out of range")
    n = r.dims[site]
    m = annihilation(n, mode)
    psi = np.moveaxis(r.tensor(), site, 0)
    psi = np.moveaxis(np.tensordot(m, psi, axes=(1, 0)), 0, site)
    dims = r.dims[:site] + (n - 1,) + r.dims[site + 1:]
    out = Register(dims, psi.reshape(-1))
    if out.norm() < ATOL * max(1.0, r.norm()):
        raise ZeroProbabilityError(f"site {site} has no {mode}-mode bosons to remove")
    return out.normalized()
