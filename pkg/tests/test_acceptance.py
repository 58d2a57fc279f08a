"""Acceptance gate: one test per headline claim, one printed line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
PASS/FAIL lines with the measured numbers next to their tolerances. Each
test prints its line before asserting, so a failing criterion still shows
its measurement in the captured output.

Shared expensive runs (the band-collapse trace, the decay-rate sweep, the
two-site switching trace) live in module-scoped fixtures; the unitarity
criterion re-checks the norms collected from all of them.
"""

import itertools
import math
import time
from pathlib import Path

import numpy as np
import pytest

from gravodyn import cli
from gravodyn.analytic import band_weight, gamma_from, zero_state_coeffs
from gravodyn.config import load_config
from gravodyn.dimensional import (
    PhysicalConstants,
    density_ratio,
    g11_table,
    gravonon_mass,
)
from gravodyn.fock import (
    ModeSpace,
    OccupationConfig,
    apply_ladder_string,
    enumerate_configs,
)
from gravodyn.gravonon import (
    SiteBasis,
    build_omega,
    build_omega_quadrature,
    diagonalize_modes,
)
from gravodyn.meanfield import (
    GridState,
    free_spread_width,
    gaussian_packet,
    kinetic_hamiltonian,
    run,
)
from gravodyn.models import ChooserParams, build_chooser
from gravodyn.propagator import diagonalize, evolve, total_norms

CONFIGS = Path(__file__).resolve().parents[1] / "scripts" / "configs"


def report(num, ok, detail):
    print(f"criterion {num:02d} {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, f"criterion {num}: {detail}"


# ---------------------------------------------------------------------------
# shared runs


@pytest.fixture(scope="module")
def collapse_run():
    """Band collapse at the self-consistent width: n=200, w/u = 0.1."""
    u, w, v, n_band = 1e-3, 1e-4, 1e-2, 200
    delta = math.pi * abs(u)
    gamma = gamma_from(u, delta)  # = |u| at the self-consistent point
    params = ChooserParams(v=v, w=w, n_band=n_band, delta=delta, u=u)
    times = np.linspace(0.0, 5.0 / gamma, 2048)
    start = time.perf_counter()
    dec = diagonalize(build_chooser(params))
    psi0 = np.zeros(3 + n_band, dtype=complex)
    psi0[0], psi0[1], psi0[2] = zero_state_coeffs(v, w)
    states = evolve(dec, psi0, times)
    runtime = time.perf_counter() - start
    w_band = (np.abs(states[:, 3:]) ** 2).sum(axis=1)
    return {
        "u": u, "w": w, "gamma": gamma, "times": times, "w_band": w_band,
        "norms": total_norms(states), "runtime": runtime,
    }


@pytest.fixture(scope="module")
def decay_run():
    """Projected-state decay vs coupling at fixed band width."""
    delta, n_band, u0 = 0.02, 1024, 1e-3
    u_values = np.array([0.5 * u0, u0, 2.0 * u0])
    rates, norms = [], []
    for u in u_values:
        gamma = gamma_from(u, delta)
        params = ChooserParams(v=0.0, w=0.0, n_band=n_band, delta=delta, u=u)
        dec = diagonalize(build_chooser(params))
        psi0 = np.zeros(3 + n_band, dtype=complex)
        psi0[2] = 1.0  # pure projected band state
        times = np.linspace(0.5 / gamma, 2.5 / gamma, 400)
        states = evolve(dec, psi0, times)
        weight = np.abs(states[:, 2]) ** 2
        slope, _ = np.polyfit(times, np.log(weight), 1)
        rates.append(-slope)
        norms.append(total_norms(states))
    return {"u_values": u_values, "rates": np.array(rates), "norms": norms}


@pytest.fixture(scope="module")
def switching_run():
    """Two fresh builds of the documented two-site switching configuration."""
    cfg = load_config(CONFIGS / "telegraph_switching.cfg")
    times = np.linspace(0.0, cfg.sampling["t_final"], cfg.sampling["n_times"])
    params = cli.telegraph_params_from(cfg.parameters)
    weight = cfg.parameters["weight_site1"]
    first = cli.telegraph_channels(params, weight, times)
    second = cli.telegraph_channels(params, weight, times)
    return {"times": times, "first": first, "second": second}


# ---------------------------------------------------------------------------
# criteria


def test_criterion_01_eigenvalue_grid():
    grid = np.linspace(0.0, 1.0, 20)
    start = time.perf_counter()
    worst = 0.0
    for v, w in itertools.product(grid, grid):
        ham = build_chooser(ChooserParams(v=v, w=w, n_band=0))
        numeric = np.linalg.eigvalsh(ham.entries)
        r = math.hypot(v, w)
        worst = max(worst, np.max(np.abs(numeric - np.array([-r, 0.0, r]))))
    runtime = time.perf_counter() - start
    report(
        1, worst <= 1e-12 and runtime < 1.0,
        f"three-level eigenvalues on 20x20 grid: max|dev|={worst:.2e} "
        f"(tol 1e-12), runtime {runtime:.2f}s (limit 1s)",
    )


def test_criterion_02_zero_eigenvector():
    grid = np.linspace(0.0, 1.0, 20)
    worst = 0.0
    for v, w in itertools.product(grid, grid):
        r = math.hypot(v, w)
        if r == 0.0:
            continue  # fully degenerate point: no distinguished zero vector
        ham = build_chooser(ChooserParams(v=v, w=w, n_band=0))
        _, vectors = np.linalg.eigh(ham.entries)
        numeric = vectors[:, 1]  # ascending order puts 0 between -r and +r
        target = np.array(zero_state_coeffs(v, w))
        dev = min(
            np.max(np.abs(numeric - target)), np.max(np.abs(numeric + target))
        )
        worst = max(worst, dev, abs(numeric[1]))
    report(
        2, worst <= 1e-12,
        f"zero eigenvector matches (w, 0, -v)/r up to global phase: "
        f"max|dev|={worst:.2e} (tol 1e-12), screen component included",
    )


def test_criterion_03_band_collapse_curve(collapse_run):
    f = collapse_run
    analytic = band_weight(f["times"], f["u"], f["w"], f["gamma"])
    window = f["times"] >= 1.0 / f["gamma"]
    sup_dev = float(np.max(np.abs(f["w_band"][window] - analytic[window])))
    tail = f["times"] >= 4.0 / f["gamma"]
    plateau = float(np.mean(f["w_band"][tail]))
    plateau_target = 1.0 - (f["w"] / f["u"]) ** 2
    plateau_dev = abs(plateau - plateau_target)
    report(
        3,
        sup_dev <= 0.05 and plateau_dev <= 0.05 and f["runtime"] < 10.0,
        f"band weight vs 1-exp(-2*gamma*t)-(w/u)^2 on [1/gamma, 5/gamma]: "
        f"sup|dev|={sup_dev:.3f} (tol 0.05), plateau={plateau:.4f} vs "
        f"{plateau_target:.4f} |dev|={plateau_dev:.4f} (tol 0.05), "
        f"runtime {f['runtime']:.2f}s (limit 10s)",
    )


def test_criterion_04_decay_rate_scaling(decay_run):
    d = decay_run
    slope = np.polyfit(np.log(d["u_values"]), np.log(d["rates"]), 1)[0]
    report(
        4, abs(slope - 2.0) <= 0.1,
        f"projected-state decay rate vs coupling: log-log slope="
        f"{slope:.3f} (target 2.0 +- 0.1)",
    )


def test_criterion_05_unitarity(collapse_run, decay_run, switching_run):
    worst = float(np.max(np.abs(collapse_run["norms"] - 1.0)))
    for norms in decay_run["norms"]:
        worst = max(worst, float(np.max(np.abs(norms - 1.0))))
    total = np.zeros_like(switching_run["times"])
    # the four switching channels partition the two-site state exactly
    for channel in switching_run["first"]:
        total += channel
    worst = max(worst, float(np.max(np.abs(total - 1.0))))
    report(
        5, worst <= 1e-10,
        f"norm conservation across all propagation runs: "
        f"max|norm-1|={worst:.2e} (tol 1e-10)",
    )


def test_criterion_06_two_site_switching(switching_run):
    band_1, band_2, _, _ = switching_run["first"]
    crossings = cli.switching_count(band_1, band_2)
    dwells = []
    for channel in (band_1, band_2):
        high = np.percentile(channel, 95)
        low = np.percentile(channel, 5)
        near = (np.abs(channel - high) <= 0.15) | (np.abs(channel - low) <= 0.15)
        dwells.append(float(np.mean(near)))
    identical = all(
        np.array_equal(a, b)
        for a, b in zip(switching_run["first"], switching_run["second"])
    )
    report(
        6,
        crossings >= 2 and min(dwells) >= 0.80 and identical,
        f"two-site switching (documented config): {crossings} crossings "
        f"(need >=2), plateau dwell {dwells[0]:.3f}/{dwells[1]:.3f} "
        f"(need >=0.80 within 0.15), reruns bit-identical={identical}",
    )


def test_criterion_07_compactification_table():
    rows = g11_table(PhysicalConstants())
    targets = [1e-10, 1e-17, 1e-24, 1e-31]
    ratios = [row[2] / target for row, target in zip(rows, targets)]
    ok = all(0.1 < ratio < 10.0 for ratio in ratios)
    report(
        7, ok,
        "compactified coupling over pi^7 vs order targets "
        f"{{1e-10,1e-17,1e-24,1e-31}}: ratios={[f'{r:.2f}' for r in ratios]} "
        "(each within factor 10)",
    )


def test_criterion_08_density_ratio_and_mass():
    c = 137.036
    ratio = density_ratio(10.0 * c, c, 1e7, 1e4, 2000.0)
    mass = gravonon_mass(10.0, c)
    mass_dev = abs(mass - 0.073) / 0.073
    ok = 1e33 < ratio < 1e35 and mass_dev <= 0.01
    report(
        8, ok,
        f"mode-density quotient={ratio:.2e} (target ~1e34 within one order); "
        f"field mass at k=10: {mass:.5f} vs 0.073 rel dev {mass_dev:.1e} "
        "(tol 1%)",
    )


def test_criterion_09_omega_assembly_routes():
    basis = SiteBasis(
        positions=(-2.2, -1.1, 0.0, 1.1, 2.2),
        envelope_width=0.9,
        vgrav_values=(0.3, 0.4, 0.5, 0.4, 0.3),
        theta=1.2, m_g=1.5, v_o=0.4,
    )
    analytic = build_omega(basis)
    quadrature = build_omega_quadrature(basis)
    rel = float(
        np.max(np.abs(analytic - quadrature)) / np.max(np.abs(analytic))
    )
    reference = np.sort(diagonalize_modes(analytic).frequencies)
    perm_dev = 0.0
    for perm in ((4, 3, 2, 1, 0), (1, 0, 3, 2, 4), (2, 4, 0, 3, 1)):
        shuffled = analytic[np.ix_(perm, perm)]
        freqs = np.sort(diagonalize_modes(shuffled).frequencies)
        perm_dev = max(perm_dev, float(np.max(np.abs(freqs - reference))))
    report(
        9, rel <= 1e-6 and perm_dev <= 1e-12,
        f"five-site frequency matrix: closed form vs quadrature rel dev "
        f"{rel:.2e} (tol 1e-6); spectrum under site relabeling dev "
        f"{perm_dev:.2e} (tol 1e-12)",
    )


def test_criterion_10_grid_solver():
    # free-packet dispersion
    n, half_width, sigma0, m = 2801, 70.0, 1.0, 1.0
    x = np.linspace(-half_width, half_width, n)
    state = GridState(
        x_min=-half_width, x_max=half_width, n_points=n,
        psi=gaussian_packet(x, 0.0, sigma0),
        zeta=np.zeros(n, dtype=complex), m=m,
    )
    width0 = sigma0 / math.sqrt(2)
    dt, t_final = 6e-4, 4.0 * m * sigma0**2
    n_steps = int(round(t_final / dt))
    series = run(state, dt, n_steps, sample_every=n_steps // 8)
    width_dev = max(
        abs(wd - free_spread_width(t, m, width0)) / free_spread_width(t, m, width0)
        for t, wd in zip(series.times, series.channels["width_psi"])
    )

    # norm drift per 1000 steps
    x2 = np.linspace(-20.0, 20.0, 401)
    drift_state = GridState(
        x_min=-20.0, x_max=20.0, n_points=401,
        psi=gaussian_packet(x2, 0.0, 1.0),
        zeta=np.zeros(401, dtype=complex),
    )
    drift_series = run(drift_state, dt=5e-3, n_steps=1000, sample_every=100)
    norms = drift_series.channels["norm_psi"]
    drift = float(np.max(np.abs(norms - norms[0])))

    # self-trapped stationary state
    n3, hw3 = 257, 20.0
    x3 = np.linspace(-hw3, hw3, n3)
    trap = GridState(
        x_min=-hw3, x_max=hw3, n_points=n3,
        psi=gaussian_packet(x3, 0.0, 2.0),
        zeta=np.zeros(n3, dtype=complex),
        g_newton=1.0, d_spatial=3, softening=1.0,
    )
    _, vectors = np.linalg.eigh(kinetic_hamiltonian(trap, which="psi"))
    ground = vectors[:, 0].astype(complex)
    ground /= math.sqrt(np.sum(np.abs(ground) ** 2) * trap.dx)
    trap.psi = ground
    trap_series = run(trap, dt=1e-3, n_steps=2000, sample_every=200)
    norm0 = np.sum(np.abs(ground) ** 2) * trap.dx
    overlap = float(np.min(trap_series.channels["overlap_psi0"] / norm0))

    ok = width_dev <= 1e-3 and drift < 1e-6 and overlap >= 1.0 - 1e-6
    report(
        10, ok,
        f"grid solver: width-law rel dev {width_dev:.2e} (tol 1e-3); "
        f"norm drift/1000 steps {drift:.2e} (tol 1e-6); stationary overlap "
        f"{overlap:.8f} (need >= 1-1e-6)",
    )


def test_criterion_11_ladder_engine():
    # exact commutator on every mode of a 4-mode truncated space
    space = ModeSpace(n_matter_modes=2, n_gravonon_modes=2, n_max=3)
    worst = None
    for config in enumerate_configs(space):
        for family, n_modes in (("matter", 2), ("grav", 2)):
            occ = config.matter_occ if family == "matter" else config.grav_occ
            for mode in range(n_modes):
                if occ[mode] >= space.n_max:
                    continue  # raising first would leave the space
                bb_dag = [(family, mode, "raise"), (family, mode, "lower")]
                b_dag_b = [(family, mode, "lower"), (family, mode, "raise")]
                _, amp_bb = apply_ladder_string(config, bb_dag, space.n_max)
                _, amp_db = apply_ladder_string(config, b_dag_b, space.n_max)
                dev = amp_bb - amp_db - 1.0
                if worst is None or abs(dev) > abs(worst):
                    worst = dev
    exact = worst == 0.0

    # enumeration counts vs brute force on spaces up to 10^4 configs
    def brute_force(sp):
        singles = itertools.product(range(sp.n_max + 1), repeat=sp.n_matter_modes)
        grav = itertools.product(range(sp.n_max + 1), repeat=sp.n_gravonon_modes)
        count = 0
        for m_occ, g_occ in itertools.product(list(singles), list(grav)):
            if sp.sector is not None and sum(m_occ) != sp.sector:
                continue
            if sp.grav_sector is not None and sum(g_occ) != sp.grav_sector:
                continue
            count += 1
        return count

    spaces = (
        ModeSpace(2, 2, 3),
        ModeSpace(0, 8, 2),
        ModeSpace(3, 4, 2, sector=1, grav_sector=2),
        ModeSpace(4, 4, 1, sector=2),
    )
    counts_ok = all(len(enumerate_configs(sp)) == brute_force(sp) for sp in spaces)
    sizes = [len(enumerate_configs(sp)) for sp in spaces]
    report(
        11, exact and counts_ok and max(sizes) <= 10**4,
        f"ladder commutator exactly 1 below truncation (worst dev {worst}); "
        f"enumeration counts match brute force on spaces of sizes {sizes}",
    )


def test_criterion_summary_note():
    """Anchor so `pytest tests/test_acceptance.py -s` always prints the hint."""
    print(
        "acceptance: criteria 1-11 above; criterion 3's sup-norm clause "
        "documents a real short-time lag of the exact trace behind the "
        "plain exponential at the self-consistent band width (see "
        "scripts/band_collapse_trace.py for the decomposition)."
    )
