#!/usr/bin/env python3
"""Generate the full set of figure-grade CSVs and render specs.

Produces, per figure family: the endpoint thermodynamic baselines, the
retained-coherence spectra, the fixed-interval line cuts, the (tau, eta)
heat maps, the Pareto arches, the chemical-potential sweeps and the
operating-point curves.  Alongside each CSV a small declarative spec file is
written for the SVG renderer in frontend/.

Full resolution takes tens of minutes on two cores; --quick produces small
grids (about a minute) suitable for smoke runs and the renderer's golden
inputs.
"""

import argparse
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from stroboreset import asymptotics, csvio, model, resetmap  # noqa: E402
from stroboreset.model import BathSpec, SystemSpec  # noqa: E402
from stroboreset.observables import coherence_spectrum  # noqa: E402
from stroboreset.sweeps import SweepGrid, operating_points, run_sweep  # noqa: E402

OMEGA0S = (0.8, 3.0)


def write(path: Path, text: str):
    path.write_text(text, encoding="utf-8")
    print(f"  wrote {path}")


def spec_file(path: Path, kind: str, inputs, output: str, **options):
    lines = [f"kind = {kind}", f"input = {', '.join(inputs)}", f"output = {output}"]
    for key, value in options.items():
        lines.append(f"{key} = {value}")
    write(path, "\n".join(lines) + "\n")


def fig1_baseline(outdir: Path, n_sites: int, n_tau: int, workers: int):
    print("fig1: endpoint baselines")
    taus = tuple(np.round(np.geomspace(0.05, 1.0, n_tau), 12))
    grid = SweepGrid(
        tau_values=taus,
        eta_values=(0.0, 1.0),
        mu_values=(0.0,),
        omega0_values=OMEGA0S,
        bath=BathSpec(n_sites=n_sites),
        system=SystemSpec(omega0=0.8),
    )
    rows = run_sweep(grid, n_workers=workers)
    write(outdir / "fig1_baseline.csv", csvio.serialize_records(rows))
    spec_file(
        outdir / "fig1.spec",
        "baseline",
        ["fig1_baseline.csv"],
        "fig1_baseline.svg",
        title="Endpoint reset channels: heat current and entropy production",
    )


def fig2_spectra(outdir: Path, n_sites: int, workers: int):
    print("fig2: retained-coherence spectra")
    del workers  # per-point work; nothing to distribute
    bath = BathSpec(n_sites=n_sites)
    basis = model.bath_basis(bath)
    etas = (0.2, 0.5, 0.8, 0.95)
    tau = 0.2
    for omega0 in OMEGA0S:
        system = SystemSpec(omega0=omega0)
        occ = model.reference_state(basis, system)
        h, _ = model.hamiltonian_in_mode_basis(bath, system, basis)
        blocks = resetmap.CyclePropagator(h).blocks(tau)
        names = []
        for eta in etas:
            fp = resetmap.solve_fixed_point(blocks, eta, occ)
            spectrum = coherence_spectrum(fp, basis)
            params = asymptotics.guide_params_from_fixed_point(
                fp, basis, occ, system, tau, eta
            )
            guide = asymptotics.guide_weight(params)
            name = f"fig2_spectrum_om{omega0}_eta{eta}.csv"
            write(
                outdir / name,
                csvio.serialize_spectrum(spectrum, basis.couplings, fp.state.x, guide),
            )
            names.append(name)
        spec_file(
            outdir / f"fig2_om{omega0}.spec",
            "spectrum",
            names,
            f"fig2_spectra_om{omega0}.svg",
            labels=", ".join(f"eta={e}" for e in etas),
            marker=omega0,
            title=f"Retained-coherence spectrum, level at {omega0}",
        )


def fig3_linecuts(outdir: Path, n_sites: int, n_eta: int, workers: int):
    print("fig3: fixed-interval line cuts")
    grid = SweepGrid(
        tau_values=(0.2,),
        eta_values=tuple(i / n_eta for i in range(n_eta)),
        mu_values=(0.0,),
        omega0_values=OMEGA0S,
        bath=BathSpec(n_sites=n_sites),
        system=SystemSpec(omega0=0.8),
    )
    rows = run_sweep(grid, n_workers=workers)
    write(outdir / "fig3_linecut.csv", csvio.serialize_records(rows))
    spec_file(
        outdir / "fig3.spec",
        "linecut",
        ["fig3_linecut.csv"],
        "fig3_linecut.svg",
        title="Retained coherence and reset heat current at tau J = 0.2",
    )


def fig4_heatmaps(outdir: Path, n_sites: int, n_grid: int, workers: int):
    print("fig4: (tau, eta) heat maps")
    taus = tuple(np.round(np.linspace(0.02, 1.0, n_grid), 12))
    etas = tuple(np.round(np.linspace(0.0, 0.995, n_grid), 12))
    grid = SweepGrid(
        tau_values=taus,
        eta_values=etas,
        mu_values=(0.0,),
        omega0_values=OMEGA0S,
        bath=BathSpec(n_sites=n_sites),
        system=SystemSpec(omega0=0.8),
    )
    rows = run_sweep(grid, n_workers=workers)
    write(outdir / "fig4_maps.csv", csvio.serialize_records(rows))
    spec_file(
        outdir / "fig4.spec",
        "heatmap",
        ["fig4_maps.csv"],
        "fig4_maps.svg",
        value="c_se, j_q",
        title="Fixed-point landscapes over the (tau, eta) plane",
    )


def fig5_pareto(outdir: Path, n_sites: int, n_eta: int, workers: int):
    print("fig5: Pareto arches")
    grid = SweepGrid(
        tau_values=(0.08, 0.2, 0.5, 0.8),
        eta_values=tuple(i / n_eta for i in range(n_eta)),
        mu_values=(0.0,),
        omega0_values=OMEGA0S,
        bath=BathSpec(n_sites=n_sites),
        system=SystemSpec(omega0=0.8),
    )
    rows = run_sweep(grid, n_workers=workers)
    write(outdir / "fig5_pareto.csv", csvio.serialize_records(rows))
    spec_file(
        outdir / "fig5.spec",
        "pareto",
        ["fig5_pareto.csv"],
        "fig5_pareto.svg",
        title="Coherence-heat operating diagrams",
    )


def fig6_musweep(outdir: Path, n_sites: int, n_mu: int, workers: int):
    print("fig6: chemical-potential sweeps")
    grid = SweepGrid(
        tau_values=(0.2,),
        eta_values=(0.2, 0.5, 0.8, 0.95),
        mu_values=tuple(np.round(np.linspace(-3.0, 3.0, n_mu), 12)),
        omega0_values=OMEGA0S,
        bath=BathSpec(n_sites=n_sites),
        system=SystemSpec(omega0=0.8),
    )
    rows = run_sweep(grid, n_workers=workers)
    write(outdir / "fig6_musweep.csv", csvio.serialize_records(rows))
    spec_file(
        outdir / "fig6.spec",
        "musweep",
        ["fig6_musweep.csv"],
        "fig6_musweep.svg",
        title="Filling-biased fixed-point observables at tau J = 0.2",
    )


def fig7_opcurves(outdir: Path, n_sites: int, n_eta: int, workers: int):
    print("fig7: operating-point curves")
    taus = (0.08, 0.2, 0.35, 0.5, 0.65, 0.8)
    etas = tuple(i / n_eta for i in range(n_eta))
    names = []
    for omega0 in OMEGA0S:
        points = []
        for tau in taus:
            grid = SweepGrid(
                tau_values=(tau,),
                eta_values=etas,
                mu_values=(0.0,),
                omega0_values=(omega0,),
                bath=BathSpec(n_sites=n_sites),
                system=SystemSpec(omega0=omega0),
            )
            points.append(operating_points(run_sweep(grid, n_workers=workers)))
        name = f"fig7_operating_om{omega0}.csv"
        write(outdir / name, csvio.serialize_operating_points(points))
        names.append(name)
    spec_file(
        outdir / "fig7.spec",
        "opcurves",
        names,
        "fig7_operating.svg",
        labels=", ".join(f"level at {w}" for w in OMEGA0S),
        title="Operating points of the three figures of merit",
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="out", help="output directory")
    parser.add_argument("--workers", type=int, default=2)
    parser.add_argument(
        "--quick",
        action="store_true",
        help="small grids and truncations (~1 minute); used for golden inputs",
    )
    parser.add_argument(
        "--only",
        nargs="*",
        choices=["fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7"],
        help="restrict to selected figure families",
    )
    args = parser.parse_args()
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    if args.quick:
        sizes = dict(
            fig1=(60, 8), fig2=(60,), fig3=(60, 16), fig4=(40, 8),
            fig5=(60, 12), fig6=(60, 13), fig7=(60, 16),
        )
    else:
        sizes = dict(
            fig1=(400, 24), fig2=(400,), fig3=(400, 64), fig4=(200, 48),
            fig5=(200, 96), fig6=(400, 61), fig7=(200, 128),
        )

    jobs = {
        "fig1": lambda: fig1_baseline(outdir, *sizes["fig1"], args.workers),
        "fig2": lambda: fig2_spectra(outdir, *sizes["fig2"], args.workers),
        "fig3": lambda: fig3_linecuts(outdir, *sizes["fig3"], args.workers),
        "fig4": lambda: fig4_heatmaps(outdir, *sizes["fig4"], args.workers),
        "fig5": lambda: fig5_pareto(outdir, *sizes["fig5"], args.workers),
        "fig6": lambda: fig6_musweep(outdir, *sizes["fig6"], args.workers),
        "fig7": lambda: fig7_opcurves(outdir, *sizes["fig7"], args.workers),
    }
    selected = args.only or list(jobs)
    start = time.perf_counter()
    for name in selected:
        jobs[name]()
    print(f"done in {time.perf_counter() - start:.0f}s")


if __name__ == "__main__":
    main()
