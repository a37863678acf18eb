"""
Brute-force dense route used to cross-check the fast path.

Everything here builds full-register matrices with Kronecker products:
Stokes operators embedded on the joint space, the two-site Hamiltonians
H1' and H2' exponentiated with scipy, and measurements as explicit bra
operators. Nothing here calls the phase tables in ``operators``.
Only usable for small registers.
"""
from __future__ import annotations

from functools import reduce
from math import comb, pi

import numpy as np
from scipy.linalg import expm

from .errors import ValidationError


def _ladder(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Stokes matrices built from mode operators on the two-mode truncated space.

    The two modes are represented with occupation 0..n each; the result is
    restricted to the fixed-N sector ordered by a-occupation k.
    """
    d = n + 1
    a = np.diag(np.sqrt(np.arange(1, d)), 1).astype(complex)
    eye = np.eye(d)
    A = np.kron(a, eye)
    B = np.kron(eye, a)
    Ad, Bd = A.conj().T, B.conj().T
    sx = Ad @ B + Bd @ A
    sy = -1j * Ad @ B + 1j * Bd @ A
    sz = Ad @ A - Bd @ B
    # basis vector |k_a = k, k_b = n-k> sits at index k*d + (n-k)
    sector = [k * d + (n - k) for k in range(d)]
    pick = np.ix_(sector, sector)
    return sx[pick], sy[pick], sz[pick]


def stokes(n: int) -> dict[str, np.ndarray]:
    sx, sy, sz = _ladder(n)
    return {"x": sx, "y": sy, "z": sz}


def embed(dims, site: int, op: np.ndarray) -> np.ndarray:
    return embed_many(dims, {site: op})


def embed_many(dims, ops: dict[int, np.ndarray]) -> np.ndarray:
    """Kronecker product placing ``ops[s]`` on site s and identities elsewhere."""
    mats = [ops.get(s, np.eye(n + 1)) for s, n in enumerate(dims)]
    return reduce(np.kron, mats)


def number_operator(dims, site: int) -> np.ndarray:
    return embed(dims, site, dims[site] * np.eye(dims[site] + 1))


def _zz_terms(dims, i, j):
    zi, zj = stokes(dims[i])["z"], stokes(dims[j])["z"]
    # operators on distinct sites commute, so S_i S_j is a single Kronecker product
    return embed_many(dims, {i: zi, j: zj}), embed(dims, i, zi), embed(dims, j, zj)


def h1_prime(dims, i: int, j: int) -> np.ndarray:
    """-S_i S_j + N_j S_i - N_i S_j + N_i N_j on the full register."""
    sij, si, sj = _zz_terms(dims, i, j)
    ni, nj = dims[i], dims[j]
    return -sij + nj * si - ni * sj + ni * nj * np.eye(sij.shape[0])


def h2_prime(dims, i: int, j: int) -> np.ndarray:
    """S_i S_j + N_j S_i + N_i S_j + N_i N_j on the full register."""
    sij, si, sj = _zz_terms(dims, i, j)
    ni, nj = dims[i], dims[j]
    return sij + nj * si + ni * sj + ni * nj * np.eye(sij.shape[0])


def zz(dims, i: int, j: int) -> np.ndarray:
    return _zz_terms(dims, i, j)[0]


def gate_unitary(
    dims, kind: str, i: int, j: int, t: float = pi / 4, method: str = "auto"
) -> np.ndarray:
    """exp(-i t H) for the named two-site Hamiltonian.

    ``method="expm"`` always uses scipy's Pade exponential. ``"auto"`` does so
    too unless H turns out exactly diagonal, in which case the diagonal is
    exponentiated elementwise; that keeps the larger registers tractable.
    """
    if kind == "rcz":
        h = h1_prime(dims, i, j)
    elif kind == "lcz":
        h = h2_prime(dims, i, j)
    elif kind == "zz":
        h = zz(dims, i, j)
    else:
        raise ValidationError(f"unknown gate kind {kind!r}")
    if method == "auto" and h.shape[0] > 64:
        d = np.diag(h)
        if not np.any(h - np.diag(d)):
            return np.diag(np.exp(-1j * t * d))
    elif method not in ("auto", "expm"):
        raise ValidationError(f"unknown exponential method {method!r}")
    return expm(-1j * t * h)


def hadamard(n: int) -> np.ndarray:
    return expm(-1j * 3 * pi / 4 * stokes(n)["y"])


def coherent(n: int, alpha: complex, beta: complex) -> np.ndarray:
    """Expand (alpha a^+ + beta b^+)^N |vac>/sqrt(N!) term by term."""
    v = np.zeros(n + 1, dtype=complex)
    for k in range(n + 1):
        v[k] = np.sqrt(comb(n, k)) * alpha**k * beta ** (n - k)
    return v


def parity_bra(n: int, phase: float, sign: int) -> np.ndarray:
    """Row vector <e| + sign e^{-i phase} <o| (normalized)."""
    e = np.array([np.sqrt(comb(n, k)) if k % 2 == 0 else 0.0 for k in range(n + 1)])
    o = np.array([np.sqrt(comb(n, k)) if k % 2 == 1 else 0.0 for k in range(n + 1)])
    ket = e / np.linalg.norm(e) + sign * np.exp(1j * phase) * o / np.linalg.norm(o)
    return (ket / np.sqrt(2)).conj()[None, :]


def contract_operator(dims, site: int, bra_row: np.ndarray) -> np.ndarray:
    """Full-space map that contracts ``site`` against a bra and removes it."""
    mats = [bra_row if s == site else np.eye(n + 1) for s, n in enumerate(dims)]
    return reduce(np.kron, mats)


def logical_rows(n: int) -> np.ndarray:
    """2 x (N+1) map onto (|k=N>, |k=0>)."""
    m = np.zeros((2, n + 1))
    m[0, n] = 1.0
    m[1, 0] = 1.0
    return m


def logical_cz_gadget(n: int, s1: int, s2: int) -> tuple[np.ndarray, float]:
    """Unnormalized two-logical-qubit amplitudes of the four-site gadget.

    Sites 0..3 are BECs 1..4. Returns (amplitudes over |00~>,|01~>,|10~>,|11~>,
    squared norm of the state before logical projection).
    """
    dims = (n, n, n, n)
    plus = coherent(n, 1 / np.sqrt(2), 1 / np.sqrt(2))
    psi = reduce(np.kron, [plus] * 4)
    psi = gate_unitary(dims, "rcz", 1, 0) @ psi
    psi = gate_unitary(dims, "lcz", 1, 2) @ psi
    psi = gate_unitary(dims, "rcz", 2, 3) @ psi
    # s1 is read on BEC3 (index 2), s2 on BEC2 (index 1)
    psi = contract_operator(dims, 2, parity_bra(n, 0.0, (-1) ** s1)) @ psi
    psi = contract_operator((n, n, n), 1, parity_bra(n, 0.0, (-1) ** s2)) @ psi
    h = hadamard(n)
    psi = np.kron(h, h) @ psi
    weight = float(np.linalg.norm(psi) ** 2)
    out = np.kron(logical_rows(n), logical_rows(n)) @ psi
    return out, weight


def protocol1(n1: int, n2: int, n3: int, phi: float, theta: float, sign3: int, sign2: int):
    """Unnormalized logical amplitudes of the three-body measurement, plus the
    squared norm after both parity contractions."""
    dims = (n1, n2, n3)
    plus = [coherent(n, 1 / np.sqrt(2), 1 / np.sqrt(2)) for n in dims]
    psi = reduce(np.kron, plus)
    psi = gate_unitary(dims, "rcz", 1, 0) @ psi
    psi = gate_unitary(dims, "rcz", 2, 1) @ psi
    psi = contract_operator(dims, 2, parity_bra(n3, phi, sign3)) @ psi
    psi = contract_operator((n1, n2), 1, parity_bra(n2, theta, sign2)) @ psi
    weight = float(np.linalg.norm(psi) ** 2)
    psi = hadamard(n1) @ psi
    return logical_rows(n1) @ psi, weight
