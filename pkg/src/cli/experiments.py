"""
Experiment registry: name -> runner taking (config, spec, stream).

Runners only translate RunConfig keys into keyword arguments of the
verify functions; all numerics live in src/verify.
"""

from dataclasses import dataclass
from typing import Callable, Dict

from src.cli.config import RunConfig
from src.model.families import SubordinatorSpec
from src.simulate.rng import RngStream
from src.verify import (
    check_condition_2_4,
    hausdorff_profile,
    run_cor1,
    run_cor2,
    run_indices,
    run_lemma3,
    run_lemma4,
    run_lemma5,
    run_potential_table,
    run_q_identity,
    run_simulate_paths,
    run_theorem1,
    run_theorem1_single_path,
)
from src.verify.models import ExperimentReport

Runner = Callable[[RunConfig, SubordinatorSpec, RngStream], ExperimentReport]


@dataclass(frozen=True)
class Experiment:
    name: str
    description: str
    runner: Runner


def _theorem1(c: RunConfig, spec: SubordinatorSpec, stream: RngStream) -> ExperimentReport:
    deltas = c.resolve_deltas(spec)
    if c.single_path:
        return run_theorem1_single_path(
            spec, c.t, deltas, engine=c.engine, rng=stream, tolerance=c.tolerance,
            potential_replicas=c.potential_replicas,
        )
    return run_theorem1(
        spec, c.t, deltas, c.replicas, engine=c.engine, rng=stream, workers=c.workers,
        tolerance=c.tolerance, counting=c.counting, potential_replicas=c.potential_replicas,
    )


def _lemma3(c: RunConfig, spec: SubordinatorSpec, stream: RngStream) -> ExperimentReport:
    return run_lemma3(
        spec, c.t, c.resolve_deltas(spec), c.replicas, pieces=c.pieces, engine=c.engine, rng=stream,
        workers=c.workers,
    )


def _lemma4(c: RunConfig, spec: SubordinatorSpec, stream: RngStream) -> ExperimentReport:
    return run_lemma4(
        spec, c.t, c.single_delta(spec), c.replicas, c_a=c.c_a, engine=c.engine, rng=stream,
        workers=c.workers, potential_replicas=c.potential_replicas,
    )


def _lemma5(c: RunConfig, spec: SubordinatorSpec, stream: RngStream) -> ExperimentReport:
    return run_lemma5(
        spec, c.t, c.resolve_deltas(spec), c.replicas, engine=c.engine, rng=stream, workers=c.workers,
        potential_replicas=c.potential_replicas,
    )


def _cor1(c: RunConfig, spec: SubordinatorSpec, stream: RngStream) -> ExperimentReport:
    return run_cor1(
        spec, c.t, c.resolve_deltas(spec), c.replicas, engine=c.engine, rng=stream, workers=c.workers,
        tolerance=c.tolerance or 0.05, mc_check_replicas=c.mc_check_replicas,
    )


def _cor2(c: RunConfig, spec: SubordinatorSpec, stream: RngStream) -> ExperimentReport:
    return run_cor2(
        spec, c.t, c.resolve_deltas(spec), c.replicas, engine=c.engine, rng=stream, workers=c.workers,
        tolerance=c.tolerance or 0.05,
    )


def _indices(c: RunConfig, spec: SubordinatorSpec, stream: RngStream) -> ExperimentReport:
    return run_indices(
        spec, c.t, c.resolve_deltas(spec), c.replicas, engine=c.engine, rng=stream, workers=c.workers,
        tolerance=c.tolerance or 0.05,
    )


def _potential_table(c: RunConfig, spec: SubordinatorSpec, stream: RngStream) -> ExperimentReport:
    return run_potential_table(spec, c.resolve_deltas(spec), c.replicas, engine=c.engine, rng=stream)


def _q_identity(c: RunConfig, spec: SubordinatorSpec, stream: RngStream) -> ExperimentReport:
    return run_q_identity(
        spec, c.single_delta(spec), c.q, c.replicas, rng=stream, engine=c.engine,
        potential_replicas=c.potential_replicas,
    )


def _hausdorff(c: RunConfig, spec: SubordinatorSpec, stream: RngStream) -> ExperimentReport:
    return hausdorff_profile(spec, xs=c.x, rng=stream)


def _condition(c: RunConfig, spec: SubordinatorSpec, stream: RngStream) -> ExperimentReport:
    return check_condition_2_4(spec, xs=c.x, rng=stream)


def _simulate_paths(c: RunConfig, spec: SubordinatorSpec, stream: RngStream) -> ExperimentReport:
    return run_simulate_paths(
        spec, c.t, c.paths, engine=c.engine, rng=stream, delta=min(_levels(c, spec)), dump=c.dump,
    )


def _levels(c: RunConfig, spec: SubordinatorSpec):
    deltas = c.resolve_deltas(spec)
    return getattr(deltas, "levels", deltas)


_ALL = [
    Experiment("theorem1", "mean of U(delta)*N(t,delta) tends to t; single_path for the a.s. mode", _theorem1),
    Experiment("lemma3", "splitting defect of the greedy count lies in [-(j-1), 0]", _lemma3),
    Experiment("lemma4", "exponential tail bound on N at a fixed delta", _lemma4),
    Experiment("lemma5", "Var N * U^2 / t^2 stays bounded", _lemma5),
    Experiment("cor1", "N * U_series / t with drift, series potential", _cor1),
    Experiment("cor2", "N under regular variation against t*Gamma(1+a)*L(1/delta)/delta^a", _cor2),
    Experiment("indices", "box-counting slope of ln N against ln(1/delta)", _indices),
    Experiment("potential-table", "U(delta) by every applicable method with the two-sided band", _potential_table),
    Experiment("q-identity", "q-potential by skeleton integral and by Laplace transform of T", _q_identity),
    Experiment("hausdorff", "gauge function profile under both readings", _hausdorff),
    Experiment("condition-2-4", "divergence of Phi(x) lnln x / Phi(x lnln x)", _condition),
    Experiment("simulate-paths", "sample paths as tables with a marginal check", _simulate_paths),
]

EXPERIMENTS: Dict[str, Experiment] = {e.name: e for e in _ALL}
