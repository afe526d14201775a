"""CSV serialization for sweep rows, spectra, operating points and reports.

Numbers are printed with 17 significant digits so doubles survive a
round-trip bit-exactly; the infinite efficiency sentinel serializes as the
literal "inf".  CSV is the only output format: both the figure frontend and
external analysis consume these files.
"""

from __future__ import annotations

import csv
import io

import numpy as np

from .observables import CoherenceSpectrum, ObservableRecord
from .sweeps import ConvergenceReport, OperatingPoints

SWEEP_HEADER = [
    "tau", "eta", "mu", "omega0", "n_sites", "p_star", "c_se", "q_sup", "j_q",
    "sigma_reset", "sigma_rate", "r_eff", "dn_e", "j_gc", "rho_spectral", "converged",
]
SPECTRUM_HEADER = ["omega_k", "g_k_sq", "x_re", "x_im", "s_c", "s_c_guide"]
OPERATING_POINTS_HEADER = [
    "tau", "eta_max_jq", "jq_max", "eta_max_cse", "cse_max", "eta_max_r", "r_max",
]
CONVERGENCE_HEADER = ["n_sites", "c_se", "j_q", "sigma_reset", "rel_change", "passed"]


def fmt(value: float) -> str:
    return format(float(value), ".17g")


def serialize_records(records: list[ObservableRecord]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for r in records:
        writer.writerow([
            fmt(r.tau), fmt(r.eta), fmt(r.mu), fmt(r.omega0), str(r.n_sites),
            fmt(r.p_star), fmt(r.c_se), fmt(r.q_sup), fmt(r.j_q),
            fmt(r.sigma_reset), fmt(r.sigma_rate), fmt(r.r_eff), fmt(r.dn_e),
            fmt(r.j_gc), fmt(r.rho_spectral), "true" if r.converged else "false",
        ])
    return out.getvalue()


def parse_records(text: str) -> list[ObservableRecord]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if header != SWEEP_HEADER:
        raise ValueError(f"unexpected sweep CSV header: {header}")
    records = []
    for row in reader:
        values = dict(zip(SWEEP_HEADER, row))
        records.append(ObservableRecord(
            tau=float(values["tau"]),
            eta=float(values["eta"]),
            mu=float(values["mu"]),
            omega0=float(values["omega0"]),
            n_sites=int(values["n_sites"]),
            p_star=float(values["p_star"]),
            c_se=float(values["c_se"]),
            q_sup=float(values["q_sup"]),
            j_q=float(values["j_q"]),
            sigma_reset=float(values["sigma_reset"]),
            sigma_rate=float(values["sigma_rate"]),
            r_eff=float(values["r_eff"]),
            dn_e=float(values["dn_e"]),
            j_gc=float(values["j_gc"]),
            rho_spectral=float(values["rho_spectral"]),
            converged=values["converged"] == "true",
        ))
    return records


def serialize_spectrum(
    spectrum: CoherenceSpectrum,
    couplings: np.ndarray,
    coherences: np.ndarray,
    guide_weights: np.ndarray,
) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(SPECTRUM_HEADER)
    g_sq = np.abs(couplings) ** 2
    for k in range(spectrum.frequencies.shape[0]):
        writer.writerow([
            fmt(spectrum.frequencies[k]), fmt(g_sq[k]),
            fmt(coherences[k].real), fmt(coherences[k].imag),
            fmt(spectrum.weights[k]), fmt(guide_weights[k]),
        ])
    return out.getvalue()


def serialize_operating_points(points: list[OperatingPoints]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(OPERATING_POINTS_HEADER)
    for p in points:
        writer.writerow([
            fmt(p.tau), fmt(p.eta_max_jq), fmt(p.jq_max), fmt(p.eta_max_cse),
            fmt(p.cse_max), fmt(p.eta_max_r), fmt(p.r_max),
        ])
    return out.getvalue()


def serialize_convergence(report: ConvergenceReport) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CONVERGENCE_HEADER)
    for i, n in enumerate(report.n_sites):
        rel = report.rel_changes[i - 1] if i > 0 else float("nan")
        writer.writerow([
            str(n), fmt(report.c_se[i]), fmt(report.j_q[i]),
            fmt(report.sigma_reset[i]), fmt(rel),
            "true" if report.passed else "false",
        ])
    return out.getvalue()
