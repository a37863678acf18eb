"""Built-in invariant checks, small enough to run in a few seconds."""
from __future__ import annotations

import time
from math import pi

import numpy as np

from . import closed_forms as cf
from . import dense
from .fock import fidelity, init_product
from .graph import Edge, GraphSpec, Vertex, build_graph_state, chain
from .operators import (
    MINUS,
    PLUS,
    LOGICAL_ONE,
    LOGICAL_ZERO,
    GateKind,
    StokesAxis,
    coherent_state,
    hadamard_bec,
    lcz,
    rcz,
    stokes_matrix,
)
from .protocols import (
    logical_cz_gadget,
    oracle_eq34_eq35,
    oracle_protocol1,
    protocol1,
    undo_byproduct,
)

N_MAX = 6
ANGLES = [0.0, pi / 3, 5 * pi / 6, 3 * pi / 2]


def _plus_pair(n1, n2):
    return init_product([(n1, coherent_state(n1, PLUS)), (n2, coherent_state(n2, PLUS))])


def check_stokes_algebra():
    worst = 0.0
    for n in range(1, N_MAX + 1):
        x, y, z = (stokes_matrix(n, a) for a in StokesAxis)
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            worst = max(worst, np.max(np.abs(a @ b - b @ a - 2j * c)))
        cas = x @ x + y @ y + z @ z - n * (n + 2) * np.eye(n + 1)
        worst = max(worst, np.max(np.abs(cas)))
    return worst < 1e-10, f"max deviation {worst:.1e}"


def check_hadamard():
    worst = 0.0
    for n in range(1, N_MAX + 1):
        h = hadamard_bec(n)
        f0 = abs(np.vdot(coherent_state(n, LOGICAL_ZERO), h @ coherent_state(n, PLUS))) ** 2
        f1 = abs(np.vdot(coherent_state(n, LOGICAL_ONE), h @ coherent_state(n, MINUS))) ** 2
        worst = max(worst, 1 - f0, 1 - f1)
    return worst < 1e-9, f"min fidelity {1 - worst:.12f}"


def check_rcz_grouped():
    worst = 0.0
    for n in range(1, N_MAX + 1):
        worst = max(worst, 1 - fidelity(rcz(_plus_pair(n, n), 0, 1), cf.rcz_grouped(n, n)))
    return worst < 1e-9, f"min fidelity {1 - worst:.12f}"


def check_lcz_grouped():
    worst = 0.0
    for n in range(1, N_MAX + 1):
        out = lcz(_plus_pair(n, n), 0, 1)
        for by in (1, 2):
            worst = max(worst, 1 - fidelity(out, cf.lcz_grouped(n, n, by)))
    return worst < 1e-9, f"min fidelity {1 - worst:.12f}"


def check_chains():
    worst = 0.0
    for n in range(1, N_MAX + 1):
        two = GraphSpec([Vertex("b1", n), Vertex("b2", n)], [Edge("b1", "b2", GateKind.RCZ)])
        worst = max(worst, 1 - fidelity(build_graph_state(two), cf.parity_decomposition(n, n)))
        if n <= 4:
            three = build_graph_state(chain([n, n, n]))
            worst = max(worst, 1 - fidelity(three, cf.three_chain(n, n, n)))
    return worst < 1e-9, f"min fidelity {1 - worst:.12f}"


def check_gates_vs_hamiltonians():
    worst = 0.0
    for n1, n2 in ((1, 1), (2, 3), (3, 2)):
        psi = init_product([(n1, coherent_state(n1, PLUS)), (n2, coherent_state(n2, MINUS))])
        for kind, fast in (("rcz", rcz(psi, 0, 1)), ("lcz", lcz(psi, 0, 1))):
            slow = dense.gate_unitary((n1, n2), kind, 0, 1) @ psi.amplitudes
            worst = max(worst, np.max(np.abs(fast.amplitudes - slow)))
    return worst < 1e-9, f"max amplitude deviation {worst:.1e}"


def check_protocol1():
    raw_even = 0.0
    corrected = 0.0
    pre = 0.0
    for n in range(1, N_MAX + 1):
        for phi in ANGLES:
            for theta in ANGLES:
                for signs in ((+1, +1), (-1, -1), (+1, -1)):
                    rep = protocol1(n, n, n, phi, theta, *signs)
                    if n % 2 == 0:
                        raw_even = max(raw_even, 1 - rep.fidelity_vs_oracle)
                    corrected = max(corrected, 1 - rep.fidelity_byproduct_corrected)
                    pre = max(pre, 1 - rep.extras["fidelity_before_hadamard_vs_closed_form"])
    ok = max(raw_even, corrected, pre) < 1e-9
    return ok, f"even-N raw {1 - raw_even:.12f}, byproduct-corrected {1 - corrected:.12f}"


def check_middle_number():
    worst = 0.0
    for n2 in (2, 3):
        ref = undo_byproduct(protocol1(1, n2, 1, pi / 3, pi / 5).outcome, [1])
        for n1 in range(1, 4):
            for n3 in range(1, 4):
                rep = protocol1(n1, n2, n3, pi / 3, pi / 5)
                worst = max(worst, 1 - undo_byproduct(rep.outcome, [n1 % 2]).fidelity(ref))
    return worst < 1e-9, f"min fidelity {1 - worst:.12f}"


def check_gadget():
    worst = 0.0
    for n in range(1, 5):
        for s1 in (0, 1):
            for s2 in (0, 1):
                rep = logical_cz_gadget(n, s1, s2)
                worst = max(worst, 1 - rep.extras["fidelity_vs_bruteforce"],
                            1 - rep.fidelity_byproduct_corrected)
    return worst < 1e-9, f"min fidelity {1 - worst:.12f}"


def check_shift_identity():
    worst = 0.0
    for n2 in range(2, N_MAX + 1):
        for phi in ANGLES:
            for theta in ANGLES:
                a = oracle_eq34_eq35(n2, phi, theta, +1).amplitudes
                b = oracle_protocol1(n2 - 1, phi, theta, +1, +1).amplitudes
                worst = max(worst, np.max(np.abs(a - b)))
    return worst < 1e-12, f"max deviation {worst:.1e}"


CHECKS = [
    ("stokes-algebra", check_stokes_algebra),
    ("hadamard-coherent-map", check_hadamard),
    ("rcz-grouped-form", check_rcz_grouped),
    ("lcz-grouped-forms", check_lcz_grouped),
    ("chain-graph-states", check_chains),
    ("gates-vs-hamiltonians", check_gates_vs_hamiltonians),
    ("three-body-outcome", check_protocol1),
    ("middle-number-dependence", check_middle_number),
    ("logical-cz-gadget", check_gadget),
    ("shifted-outcome-identity", check_shift_identity),
]


def run_selftest(out=print) -> bool:
    """Run every check, print a table, return True iff all pass."""
    all_ok = True
    t0 = time.perf_counter()
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed check, reported by name
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        all_ok &= bool(ok)
        out(f"{'PASS' if ok else 'FAIL'}  {name:<28} {detail}")
    out(f"{'all checks passed' if all_ok else 'FAILED'} in {time.perf_counter() - t0:.2f}s")
    return all_ok
