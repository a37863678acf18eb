"""
Pure-state registers of two-component BEC sites.

Every site holds a fixed number of bosons N split over modes a and b. The
site's Fock basis is indexed by k, the number of a-mode bosons
(b holds N - k), so a site is an (N+1)-dimensional space. A register is the
tensor product of its sites, stored row-major with site 0 slowest.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ValidationError

ATOL = 1e-12
NORM_TOL = 1e-9


@dataclass(frozen=True)
class Register:
    """Joint state of several BEC sites.

    ``dims`` holds the particle number of each site; the amplitude vector has
    length ``prod(n + 1 for n in dims)``. Operations never mutate a register,
    they return a new one.
    """

    dims: tuple[int, ...]
    amplitudes: np.ndarray

    def __post_init__(self):
        dims = tuple(int(n) for n in self.dims)
        if any(n < 0 for n in dims):
            raise ValidationError(f"negative particle number in {dims}")
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        size = int(np.prod([n + 1 for n in dims])) if dims else 1
        if amps.size != size:
            raise ValidationError(
                f"amplitude vector has length {amps.size}, site structure {dims} needs {size}"
            )
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_sites(self) -> int:
        return len(self.dims)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(n + 1 for n in self.dims)

    def tensor(self) -> np.ndarray:
        """Amplitudes viewed as an array with one axis per site."""
        return self.amplitudes.reshape(self.shape)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "Register":
        nrm = self.norm()
        if nrm < ATOL:
            raise ValidationError("cannot normalize a zero vector")
        return Register(self.dims, self.amplitudes / nrm)

    def to_json(self) -> str:
        return dump_state(self)


def site_vector(n_particles: int, amplitudes) -> np.ndarray:
    """Validate a single-site amplitude vector against its particle number."""
    v = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if n_particles < 0:
        raise ValidationError(f"negative particle number {n_particles}")
    if v.size != n_particles + 1:
        raise ValidationError(
            f"site with N={n_particles} needs {n_particles + 1} amplitudes, got {v.size}"
        )
    return v


def init_product(specs: Sequence[tuple[int, np.ndarray]]) -> Register:
    """Tensor product of normalized single-site vectors.

    ``specs`` is a sequence of ``(n_particles, amplitudes)`` pairs.
    """
    if not specs:
        raise ValidationError("a register needs at least one site")
    dims = []
    state = np.ones(1, dtype=complex)
    for n, amps in specs:
        v = site_vector(n, amps)
        nrm = np.linalg.norm(v)
        if abs(nrm - 1.0) > NORM_TOL:
            raise ValidationError(f"site vector not normalized (norm {nrm:.3g})")
        dims.append(n)
        state = np.kron(state, v)
    return Register(tuple(dims), state)


def _check_site(r: Register, site: int) -> int:
    if not 0 <= site < r.n_sites:
        raise ValidationError(f"site {site} out of range for {r.n_sites}-site register")
    return site


def apply_site_operator(r: Register, site: int, m) -> Register:
    """Apply ``m`` on one site, identity elsewhere."""
    _check_site(r, site)
    m = np.asarray(m, dtype=complex)
    d = r.dims[site] + 1
    if m.shape != (d, d):
        raise ValidationError(f"operator shape {m.shape} does not act on site {site} (dim {d})")
    psi = np.moveaxis(r.tensor(), site, 0)
    psi = np.tensordot(m, psi, axes=(1, 0))
    return Register(r.dims, np.moveaxis(psi, 0, site).reshape(-1))


def pair_phase_table(
    n_i: int, n_j: int, phase_fn: Callable[[int, int], complex]
) -> np.ndarray:
    table = np.empty((n_i + 1, n_j + 1), dtype=complex)
    for ki in range(n_i + 1):
        for kj in range(n_j + 1):
            table[ki, kj] = phase_fn(ki, kj)
    return table


def apply_pair_phase(
    r: Register, i: int, j: int, phase_fn: Callable[[int, int], complex] | np.ndarray
) -> Register:
    """Multiply each amplitude by ``phase_fn(k_i, k_j)``.

    ``phase_fn`` may also be a precomputed ``(N_i+1, N_j+1)`` table.
    """
    _check_site(r, i)
    _check_site(r, j)
    if i == j:
        raise ValidationError("pair phase needs two distinct sites")
    if callable(phase_fn):
        table = pair_phase_table(r.dims[i], r.dims[j], phase_fn)
    else:
        table = np.asarray(phase_fn, dtype=complex)
        if table.shape != (r.dims[i] + 1, r.dims[j] + 1):
            raise ValidationError(f"phase table shape {table.shape} does not match sites {i}, {j}")
    if np.max(np.abs(np.abs(table) - 1.0)) > ATOL:
        raise ValidationError("pair phase is not unimodular")
    shape = [1] * r.n_sites
    shape[i] = r.dims[i] + 1
    shape[j] = r.dims[j] + 1
    if i < j:
        broadcast = table.reshape(shape)
    else:
        broadcast = table.T.reshape(shape)
    return Register(r.dims, (r.tensor() * broadcast).reshape(-1))


def contract_site(r: Register, site: int, bra_vector) -> Register:
    """Contract ``site`` against ``<bra_vector|``, dropping it. Not renormalized.

    A single-site register contracts to a zero-site register holding one scalar.
    """
    _check_site(r, site)
    v = site_vector(r.dims[site], bra_vector)
    psi = np.tensordot(v.conj(), r.tensor(), axes=(0, site))
    dims = r.dims[:site] + r.dims[site + 1:]
    return Register(dims, psi.reshape(-1))


def inner(r1: Register, r2: Register) -> complex:
    if r1.dims != r2.dims:
        raise ValidationError(f"site structures differ: {r1.dims} vs {r2.dims}")
    return complex(np.vdot(r1.amplitudes, r2.amplitudes))


def fidelity(r1: Register, r2: Register) -> float:
    """|<r1|r2>|^2 for normalized registers; insensitive to global phase."""
    f = abs(inner(r1, r2)) ** 2
    return float(min(1.0, f))


def vector_fidelity(a, b) -> float:
    """Fidelity of two (not necessarily normalized) vectors."""
    a = np.asarray(a, dtype=complex).reshape(-1)
    b = np.asarray(b, dtype=complex).reshape(-1)
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na < ATOL or nb < ATOL:
        raise ValidationError("fidelity of a zero vector")
    return float(min(1.0, abs(np.vdot(a, b)) ** 2 / (na * nb) ** 2))


def dump_state(r: Register) -> str:
    payload = {
        "version": 1,
        "layout": "row-major, site 0 slowest, index k = a-mode occupation",
        "sites": list(r.dims),
        "amplitudes": [[float(z.real), float(z.imag)] for z in r.amplitudes],
    }
    return json.dumps(payload)


def load_state(text: str) -> Register:
    payload = json.loads(text)
    amps = np.array([complex(re, im) for re, im in payload["amplitudes"]])
    return Register(tuple(payload["sites"]), amps)
