"""Command-line front end: benchmark sweeps, spectra, landscapes, gate budgets.

Exit codes: 0 full success, 1 any per-run failure, 2 configuration error.
All CSV output uses ',' as delimiter, '.' as decimal separator, and a
header row; the landscape CSV carries one leading '#' metadata line.
"""

import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import click

from .analysis import protocol_gate_budget, spectrum_report
from .hamiltonian import diagonal
from .instance import BENCHMARK_NUMBERS, ProblemInstance, make_instance
from .optimizer import (INTERPOLATION, SHIFT_HEURISTIC, RunRecord,
                        TrainSchedule, incremental_train, landscape_scan)
from .simulator import PROTOCOLS, ansatz_state, populations

FIDELITY_TARGET = 0.8


def _parse_number(value: str) -> list[int]:
    if value == "all":
        return list(BENCHMARK_NUMBERS)
    try:
        return [int(value)]
    except ValueError:
        raise click.UsageError(f"--number must be an integer or 'all', got {value!r}")


def _parse_single_number(value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise click.UsageError(f"--number must be an integer, got {value!r}")


def _instance_or_usage_error(N: int) -> ProblemInstance:
    try:
        return make_instance(N)
    except ValueError as exc:
        raise click.UsageError(str(exc))


@click.group()
def main():
    """QAOA factorization of odd semiprimes."""


@main.command()
def instances():
    """Print the benchmark instance table."""
    header = f"{'N':>4} {'n':>3} {'n_p':>4} {'n_q':>4}  {'p':>3} {'q':>3}  solutions"
    click.echo(header)
    for N in BENCHMARK_NUMBERS:
        inst = make_instance(N)
        sols = ", ".join(inst.solution_strings())
        p, q = inst.decode(min(inst.solutions))
        click.echo(f"{N:>4} {inst.n:>3} {inst.n_p:>4} {inst.n_q:>4}  "
                   f"{p:>3} {q:>3}  {sols}")


@main.command()
@click.option("--number", "-N", required=True, help="odd semiprime")
@click.option("--kind", type=click.Choice(["QP", "LP"]), default="LP",
              show_default=True)
@click.option("--out", type=click.Path(path_type=Path), default=None,
              help="output CSV path (stdout if omitted)")
def spectrum(number, kind, out):
    """Normalized energy spectrum of a problem Hamiltonian."""
    N = _parse_single_number(number)
    inst = _instance_or_usage_error(N)
    report = spectrum_report(diagonal(inst, kind), inst)
    diag = diagonal(inst, kind).diag
    rows = [
        (b, inst.state_string(b), int(diag[b]), repr(float(report.normalized[b])),
         int(b in inst.solutions))
        for b in range(inst.dim)
    ]
    _write_csv(out, ["basis_index", "display_string", "energy",
                     "normalized_energy", "is_solution"], rows)


@main.command()
@click.option("--number", "-N", required=True)
@click.option("--protocol", type=click.Choice(sorted(PROTOCOLS)),
              default="standard", show_default=True)
@click.option("--scan-resolution", type=int, default=64, show_default=True)
@click.option("--out", type=click.Path(path_type=Path), default=None)
def landscape(number, protocol, scan_resolution, out):
    """Depth-1 cost landscape over the (gamma, beta) grid."""
    if scan_resolution < 8:
        raise click.UsageError("--scan-resolution must be at least 8")
    N = _parse_single_number(number)
    inst = _instance_or_usage_error(N)
    scan = landscape_scan(PROTOCOLS[protocol], inst, scan_resolution)
    meta = (f"# gamma_max={scan.gamma_max!r} gamma0={scan.gamma0!r} "
            f"beta0={scan.beta0!r}")
    rows = [
        (repr(float(g)), repr(float(b)), repr(float(scan.costs[i, j])))
        for i, g in enumerate(scan.gammas)
        for j, b in enumerate(scan.betas)
    ]
    _write_csv(out, ["gamma", "beta", "cost"], rows, preamble=meta)


@main.command()
@click.option("--number", "-N", required=True)
@click.option("--out", type=click.Path(path_type=Path), default=None)
def gates(number, out):
    """Two-qubit gate budget per layer for each protocol."""
    N = _parse_single_number(number)
    inst = _instance_or_usage_error(N)
    rows = []
    for name, cfg in sorted(PROTOCOLS.items()):
        budget = protocol_gate_budget(inst, cfg.evolution_kind)
        for w in sorted(budget.by_weight):
            rows.append((name, w, budget.by_weight[w],
                         2 * (w - 1) * budget.by_weight[w] if w >= 2 else 0))
        rows.append((name, "total", sum(budget.by_weight.values()),
                     budget.two_qubit_per_layer))
    _write_csv(out, ["protocol", "pauli_weight", "term_count",
                     "two_qubit_gates"], rows)


@main.command()
@click.option("--number", "-N", default="all", show_default=True,
              help="odd semiprime or 'all' for the benchmark set")
@click.option("--protocol", "protocols", multiple=True,
              type=click.Choice(sorted(PROTOCOLS)),
              help="repeatable; defaults to all three protocols")
@click.option("--max-depth", type=int, default=40, show_default=True)
@click.option("--init-strategy",
              type=click.Choice([SHIFT_HEURISTIC, INTERPOLATION]),
              default=SHIFT_HEURISTIC, show_default=True)
@click.option("--scan-resolution", type=int, default=64, show_default=True)
@click.option("--out", type=click.Path(path_type=Path), required=True,
              help="output directory")
@click.option("--workers", type=int, default=1, show_default=True)
def run(number, protocols, max_depth, init_strategy, scan_resolution, out,
        workers):
    """Train all requested (N, protocol) runs and write result files."""
    numbers = _parse_number(number)
    if not protocols:
        protocols = tuple(sorted(PROTOCOLS))
    try:
        schedule = TrainSchedule(max_depth=max_depth,
                                 init_strategy=init_strategy,
                                 scan_resolution=scan_resolution)
        insts = {N: make_instance(N) for N in numbers}
    except ValueError as exc:
        raise click.UsageError(str(exc))
    out.mkdir(parents=True, exist_ok=True)

    jobs = [(N, name) for N in numbers for name in protocols]
    records: dict[tuple[int, str], RunRecord] = {}
    failures = []
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {job: pool.submit(_train_job, job[0], job[1], schedule)
                       for job in jobs}
            for job, fut in futures.items():
                try:
                    records[job] = fut.result()
                except Exception as exc:
                    failures.append((job, str(exc)))
    else:
        for job in jobs:
            try:
                records[job] = _train_job(job[0], job[1], schedule)
            except Exception as exc:
                failures.append((job, str(exc)))

    for (N, name), rec in records.items():
        path = out / f"run_N{N}_{name}.json"
        path.write_text(json.dumps(rec.to_dict(), sort_keys=True, indent=1))
    for N in numbers:
        per_n = {name: records[(N, name)] for name in protocols
                 if (N, name) in records}
        if per_n:
            _write_summary_files(out, insts[N], per_n)

    for job, msg in failures:
        click.echo(f"FAILED N={job[0]} protocol={job[1]}: {msg}", err=True)
    click.echo(f"completed {len(records)}/{len(jobs)} runs, output in {out}")
    if failures:
        sys.exit(1)


def _train_job(N: int, protocol: str, schedule: TrainSchedule) -> RunRecord:
    return incremental_train(PROTOCOLS[protocol], make_instance(N), schedule)


def _snapshot_depth(per_n: dict[str, RunRecord], max_depth: int) -> tuple[int, bool]:
    """Smallest depth at which any protocol reaches the fidelity target."""
    for depth in range(max_depth + 1):
        for rec in per_n.values():
            if rec.records[depth].fidelity >= FIDELITY_TARGET:
                return depth, True
    return max_depth, False


def _write_summary_files(out: Path, inst: ProblemInstance,
                         per_n: dict[str, RunRecord]):
    N = inst.N
    max_depth = len(next(iter(per_n.values())).records) - 1
    depth, reached = _snapshot_depth(per_n, max_depth)

    rows = []
    for name, rec in sorted(per_n.items()):
        r = rec.records[depth]
        state = ansatz_state(PROTOCOLS[name], inst, r.gammas, r.betas)
        probs = populations(state)
        for b in range(inst.dim):
            rows.append((name, depth, int(reached), b, inst.state_string(b),
                         int(b in inst.solutions), repr(float(probs[b]))))
    _write_csv(out / f"populations_N{N}.csv",
               ["protocol", "depth", "target_reached", "basis_index",
                "display_string", "is_solution", "population"], rows)

    rows = []
    for name, rec in sorted(per_n.items()):
        for r in rec.records:
            rows.append((name, r.depth, repr(r.fidelity), repr(r.cost)))
    _write_csv(out / f"fidelity_vs_depth_N{N}.csv",
               ["protocol", "depth", "fidelity", "cost"], rows)

    rows = []
    for name, rec in sorted(per_n.items()):
        budget = protocol_gate_budget(inst, PROTOCOLS[name].evolution_kind)
        for r in rec.records:
            rows.append((name, r.depth, budget.cumulative(r.depth),
                         repr(r.fidelity)))
    _write_csv(out / f"fidelity_vs_gates_N{N}.csv",
               ["protocol", "depth", "two_qubit_gates", "fidelity"], rows)


def _write_csv(path, header, rows, preamble=None):
    if path is None:
        _emit_csv(sys.stdout, header, rows, preamble)
    else:
        with open(path, "w", newline="") as fh:
            _emit_csv(fh, header, rows, preamble)


def _emit_csv(fh, header, rows, preamble):
    if preamble is not None:
        fh.write(preamble + "\n")
    writer = csv.writer(fh)
    writer.writerow(header)
    writer.writerows(rows)


if __name__ == "__main__":
    main()
