"""
Reference states written out term by term.

Each builder expands a grouped-sum state (coherent factors times Fock kets)
directly, with all binomial weights kept. They never touch the gate code,
so comparing them to simulated registers (by fidelity) is an independent
check. Returned registers are normalized.
"""
from __future__ import annotations

from math import comb, pi

import numpy as np

from .fock import Register
from .measure import parity_ket
from .operators import MINUS, PLUS, CoherentSpec, coherent_state, fock_ket

H = 1 / np.sqrt(2)


def _c(n: int, k: int) -> float:
    return np.sqrt(comb(n, k)) * 2 ** (-n / 2)


def _reg(dims, amps) -> Register:
    return Register(tuple(dims), amps).normalized()


def zz_grouped(n1: int, n2: int, t: float) -> Register:
    """exp(-i t S1 S2)|+>>|+>> grouped by the Fock index of site 2."""
    psi = np.zeros((n1 + 1, n2 + 1), dtype=complex)
    for k2 in range(n2 + 1):
        s = 2 * k2 - n2
        site1 = coherent_state(n1, CoherentSpec(np.exp(-1j * s * t) * H, np.exp(1j * s * t) * H))
        psi[:, k2] += _c(n2, k2) * site1
    return _reg((n1, n2), psi.reshape(-1))


def legacy_grouped(n: int) -> Register:
    """The t = pi/4N form: phase e^{-i pi k2/N} on the b component of site 1."""
    psi = np.zeros((n + 1, n + 1), dtype=complex)
    for k2 in range(n + 1):
        psi[:, k2] += _c(n, k2) * coherent_state(n, CoherentSpec(H, np.exp(-1j * pi * k2 / n) * H))
    return _reg((n, n), psi.reshape(-1))


def rcz_grouped(n1: int, n2: int) -> Register:
    """sum_k1 |k1>_1 |1/sqrt2, e^{-i pi k1}/sqrt2>>_2."""
    psi = np.zeros((n1 + 1, n2 + 1), dtype=complex)
    for k1 in range(n1 + 1):
        psi[k1, :] += _c(n1, k1) * coherent_state(n2, CoherentSpec(H, np.exp(-1j * pi * k1) * H))
    return _reg((n1, n2), psi.reshape(-1))


def lcz_grouped(n1: int, n2: int, by_site: int = 2) -> Register:
    """l-CZ on |+>>|+>>, grouped by the Fock index of site 2 (or site 1)."""
    psi = np.zeros((n1 + 1, n2 + 1), dtype=complex)
    if by_site == 2:
        for k2 in range(n2 + 1):
            psi[:, k2] += _c(n2, k2) * coherent_state(n1, CoherentSpec(np.exp(-1j * pi * k2) * H, H))
    else:
        for k1 in range(n1 + 1):
            psi[k1, :] += _c(n1, k1) * coherent_state(n2, CoherentSpec(np.exp(-1j * pi * k1) * H, H))
    return _reg((n1, n2), psi.reshape(-1))


def parity_decomposition(n1: int, n2: int) -> Register:
    """|e>_1 |+>>_2 + |o>_1 |->>_2 with weighted (unnormalized) parity kets."""
    e = parity_ket(n1, 0) * np.sqrt(2 ** (n1 - 1))
    psi = np.kron(e, coherent_state(n2, PLUS))
    if n1 >= 1:
        o = parity_ket(n1, 1) * np.sqrt(2 ** (n1 - 1))
        psi = psi + np.kron(o, coherent_state(n2, MINUS))
    return _reg((n1, n2), psi)


def qubit_pair_graph() -> Register:
    """|0>|+> + |1>|-> read through |0>->|e>, |1>->|o>, |+-> -> |1/sqrt2, +-1/sqrt2>> at N=1."""
    zero, one = fock_ket(1, 0), fock_ket(1, 1)
    psi = np.kron(zero, coherent_state(1, PLUS)) + np.kron(one, coherent_state(1, MINUS))
    return _reg((1, 1), psi)


def three_chain(n1: int, n2: int, n3: int) -> Register:
    """sum_{k2,k3} |1/sqrt2, e^{-i pi k2}/sqrt2>>_1 |k2, e^{-i pi k3}>_2 |k3>_3.

    |k, e^{-i pi k'}> puts the phase on each of the N-k b-mode bosons, i.e.
    e^{-i pi k'(N-k)} |k>.
    """
    psi = np.zeros((n1 + 1, n2 + 1, n3 + 1), dtype=complex)
    for k2 in range(n2 + 1):
        site1 = coherent_state(n1, CoherentSpec(H, np.exp(-1j * pi * k2) * H))
        for k3 in range(n3 + 1):
            w = _c(n2, k2) * _c(n3, k3) * np.exp(-1j * pi * k3 * (n2 - k2))
            psi[:, k2, k3] += w * site1
    return _reg((n1, n2, n3), psi.reshape(-1))


def after_first_measurement(n1: int, n2: int, phi: float) -> Register:
    """Three-chain with site 3 projected on |e> + e^{i phi}|o>.

    sum_k2 (e^{-i(phi + N2 pi - k2 pi)} + 1) |1/sqrt2, e^{-i pi k2}/sqrt2>>_1 |k2>_2
    """
    psi = np.zeros((n1 + 1, n2 + 1), dtype=complex)
    for k2 in range(n2 + 1):
        site1 = coherent_state(n1, CoherentSpec(H, np.exp(-1j * pi * k2) * H))
        w = _c(n2, k2) * (np.exp(-1j * (phi + n2 * pi - k2 * pi)) + 1)
        psi[:, k2] += w * site1
    return _reg((n1, n2), psi.reshape(-1))


def after_second_measurement(n1: int, n2: int, phi: float, theta: float) -> Register:
    """(1 + e^{-i(phi+N2 pi)})|+>> + e^{-i theta}(1 - e^{-i(phi+N2 pi)})|->> on site 1."""
    a = 1 + np.exp(-1j * (phi + n2 * pi))
    b = 1 - np.exp(-1j * (phi + n2 * pi))
    psi = a * coherent_state(n1, PLUS) + np.exp(-1j * theta) * b * coherent_state(n1, MINUS)
    return _reg((n1,), psi)


def one_qubit_rotation(theta: float) -> np.ndarray:
    """H e^{i theta Z/2} |+> as a site vector at N=1 (a-mode boson = qubit |0>)."""
    hq = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    rz = np.diag([np.exp(1j * theta / 2), np.exp(-1j * theta / 2)])
    q = hq @ rz @ np.array([1, 1]) / np.sqrt(2)
    # qubit order (|0>,|1>) = (k=1, k=0)
    return q[::-1].astype(complex)


def gadget_graph(n: int) -> Register:
    """Four-site graph: sum_{k2,k3} |+,e^{-i pi k2}>>_1 |e^{-i pi k3}, k2>_2 |k3>_3 |+, e^{-i pi k3}>>_4."""
    psi = np.zeros((n + 1,) * 4, dtype=complex)
    for k2 in range(n + 1):
        s1 = coherent_state(n, CoherentSpec(H, np.exp(-1j * pi * k2) * H))
        for k3 in range(n + 1):
            s4 = coherent_state(n, CoherentSpec(H, np.exp(-1j * pi * k3) * H))
            w = _c(n, k2) * _c(n, k3) * np.exp(-1j * pi * k3 * k2)
            psi[:, k2, k3, :] += w * np.multiply.outer(s1, s4)
    return _reg((n,) * 4, psi.reshape(-1))
