"""Classical training: p=1 landscape scan, BFGS refinement, incremental depth growth.

Each depth d is optimized over all 2d parameters with unbounded BFGS
(scipy), using central finite-difference gradients. Depth d+1 is seeded
from the depth-d optimum, either by the shift heuristic (repeat the last
gamma, new beta = 0) or by linear interpolation of the parameter
trajectory. The shift seed evaluates to exactly the previous optimum, so
recorded costs are non-increasing in depth.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize as scipy_minimize

from ._kernels import fd_jac_kernel
from .hamiltonian import diagonal
from .instance import ProblemInstance
from .simulator import (ProtocolConfig, evolve, expectation, fidelity,
                        initial_state)

SHIFT_HEURISTIC = "shift_heuristic"
INTERPOLATION = "interpolation"

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class TrainSchedule:
    max_depth: int = 40
    init_strategy: str = SHIFT_HEURISTIC
    scan_resolution: int = 64
    fd_step: float = 1e-6    # central-difference step
    gtol: float = 1e-6       # gradient max-norm termination
    ftol: float = 1e-10      # per-iteration cost-improvement termination
    maxiter: int = 500

    def __post_init__(self):
        if not 1 <= self.max_depth <= 200:
            raise ValueError("max_depth must be in [1, 200]")
        if self.scan_resolution < 8:
            raise ValueError("scan_resolution must be at least 8")
        if self.init_strategy not in (SHIFT_HEURISTIC, INTERPOLATION):
            raise ValueError(f"unknown init strategy {self.init_strategy!r}")


@dataclass
class DepthRecord:
    depth: int
    gammas: list[float]
    betas: list[float]
    cost: float
    fidelity: float
    n_iters: int
    n_evals: int
    converged: bool


@dataclass
class RunRecord:
    """Per-depth training trace of one (instance, protocol) run."""

    N: int
    protocol: str
    init_strategy: str
    records: list[DepthRecord] = field(default_factory=list)

    def costs(self) -> list[float]:
        return [r.cost for r in self.records]

    def fidelities(self) -> list[float]:
        return [r.fidelity for r in self.records]

    def best_fidelity(self) -> float:
        return max(self.fidelities())

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "N": self.N,
            "protocol": self.protocol,
            "init_strategy": self.init_strategy,
            "depths": [
                {
                    "depth": r.depth,
                    "gammas": r.gammas,
                    "betas": r.betas,
                    "cost": r.cost,
                    "fidelity": r.fidelity,
                    "n_iters": r.n_iters,
                    "n_evals": r.n_evals,
                    "converged": r.converged,
                }
                for r in self.records
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RunRecord":
        rec = cls(N=d["N"], protocol=d["protocol"],
                  init_strategy=d["init_strategy"])
        for r in d["depths"]:
            rec.records.append(DepthRecord(
                depth=r["depth"], gammas=r["gammas"], betas=r["betas"],
                cost=r["cost"], fidelity=r["fidelity"],
                n_iters=r["n_iters"], n_evals=r["n_evals"],
                converged=r["converged"]))
        return rec


def make_cost_fn(cfg: ProtocolConfig, inst: ProblemInstance):
    """Cost of the flattened parameter vector [gammas..., betas...]."""
    evo = diagonal(inst, cfg.evolution_kind).diag.astype(np.float64)
    cost_diag = diagonal(inst, cfg.cost_kind).diag.astype(np.float64)
    psi0 = initial_state(cfg, inst.n)
    n = inst.n

    def fn(x: np.ndarray) -> float:
        d = len(x) // 2
        state = evolve(psi0.copy(), evo, x[:d], x[d:], n)
        return expectation(state, cost_diag)

    return fn


@dataclass(frozen=True)
class LandscapeScan:
    gamma0: float
    beta0: float
    gamma_max: float
    gammas: np.ndarray      # grid axis, length = resolution
    betas: np.ndarray       # grid axis, length = resolution
    costs: np.ndarray       # shape (resolution, resolution), [i_gamma, i_beta]


def gamma_fold_limit(cfg: ProtocolConfig, inst: ProblemInstance) -> float:
    """Largest useful gamma: 2*pi over the largest phase magnitude."""
    evo = diagonal(inst, cfg.evolution_kind).diag
    e_max = int(np.max(np.abs(evo)))
    if e_max == 0:
        raise ValueError("evolution diagonal is identically zero")
    return 2.0 * np.pi / e_max


def landscape_scan(cfg: ProtocolConfig, inst: ProblemInstance,
                   resolution: int = 64) -> LandscapeScan:
    """Evaluate the depth-1 cost on a gamma x beta grid and pick its minimum.

    gamma ranges over (0, gamma_max] and beta over [0, pi]. Ties resolve
    to the lowest gamma index, then the lowest beta index.
    """
    if resolution < 8:
        raise ValueError("resolution must be at least 8")
    gamma_max = gamma_fold_limit(cfg, inst)
    gammas = gamma_max * np.arange(1, resolution + 1) / resolution
    betas = np.linspace(0.0, np.pi, resolution)
    fn = make_cost_fn(cfg, inst)
    costs = np.empty((resolution, resolution))
    for i, g in enumerate(gammas):
        for j, b in enumerate(betas):
            costs[i, j] = fn(np.array([g, b]))
    i, j = np.unravel_index(np.argmin(costs), costs.shape)
    return LandscapeScan(gamma0=float(gammas[i]), beta0=float(betas[j]),
                         gamma_max=gamma_max, gammas=gammas, betas=betas,
                         costs=costs)


@dataclass
class MinimizeResult:
    params: np.ndarray
    cost: float
    n_iters: int
    n_evals: int
    converged: bool


def _central_diff_jac(fn, step: float):
    def jac(x: np.ndarray) -> np.ndarray:
        g = np.empty_like(x)
        for i in range(len(x)):
            e = np.zeros_like(x)
            e[i] = step
            g[i] = (fn(x + e) - fn(x - e)) / (2.0 * step)
        return g

    return jac


def minimize(cost_fn, start: np.ndarray,
             schedule: TrainSchedule = TrainSchedule(),
             jac=None) -> MinimizeResult:
    """Unbounded BFGS descent with central finite-difference gradients.

    Stops on gradient max-norm < gtol, per-iteration improvement < ftol, or
    maxiter. A custom central-difference `jac` may be supplied (its 2 evals
    per coordinate are included in n_evals). Never returns a point worse
    than the start; on a failed descent the start point is handed back with
    converged=False.
    """
    n_evals = 0

    def counted(x):
        nonlocal n_evals
        n_evals += 1
        return cost_fn(x)

    if jac is None:
        jac_fn = _central_diff_jac(counted, schedule.fd_step)
    else:
        def jac_fn(x):
            nonlocal n_evals
            n_evals += 2 * len(x)
            return jac(x)

    start = np.asarray(start, dtype=np.float64)
    f0 = counted(start)
    last_f = f0
    stopped_flat = False

    def callback(intermediate_result):
        nonlocal last_f, stopped_flat
        f = float(intermediate_result.fun)
        if abs(last_f - f) < schedule.ftol:
            stopped_flat = True
            raise StopIteration
        last_f = f

    res = scipy_minimize(counted, start, method="BFGS", jac=jac_fn,
                         callback=callback,
                         options={"gtol": schedule.gtol,
                                  "maxiter": schedule.maxiter})
    if res.fun > f0:
        return MinimizeResult(params=start, cost=f0, n_iters=int(res.nit),
                              n_evals=n_evals, converged=False)
    return MinimizeResult(params=np.asarray(res.x, dtype=np.float64),
                          cost=float(res.fun), n_iters=int(res.nit),
                          n_evals=n_evals,
                          converged=bool(res.success) or stopped_flat)


def grow_parameters(gammas: np.ndarray, betas: np.ndarray,
                    strategy: str) -> tuple[np.ndarray, np.ndarray]:
    """Initial parameters for depth d+1 from the depth-d optimum."""
    gammas = np.asarray(gammas, dtype=np.float64)
    betas = np.asarray(betas, dtype=np.float64)
    d = len(gammas)
    if strategy == SHIFT_HEURISTIC:
        return (np.append(gammas, gammas[-1]), np.append(betas, 0.0))
    if strategy == INTERPOLATION:
        if d == 1:
            return np.repeat(gammas, 2), np.repeat(betas, 2)
        old_t = np.linspace(0.0, 1.0, d)
        new_t = np.linspace(0.0, 1.0, d + 1)
        return np.interp(new_t, old_t, gammas), np.interp(new_t, old_t, betas)
    raise ValueError(f"unknown init strategy {strategy!r}")


def incremental_train(cfg: ProtocolConfig, inst: ProblemInstance,
                      schedule: TrainSchedule = TrainSchedule()) -> RunRecord:
    """Depth-by-depth training up to schedule.max_depth.

    BFGS sees gamma in units where one angle-folding period is 2*pi
    (gamma * E_max); raw gamma gradients grow with E_max^2, which wrecks
    the identity-Hessian line search for the larger instances.
    """
    evo = diagonal(inst, cfg.evolution_kind).diag.astype(np.float64)
    cost_diag = diagonal(inst, cfg.cost_kind).diag.astype(np.float64)
    fn = make_cost_fn(cfg, inst)
    e_scale = float(np.max(np.abs(evo)))
    record = RunRecord(N=inst.N, protocol=cfg.name,
                       init_strategy=schedule.init_strategy)

    def scaled_fn(x: np.ndarray) -> float:
        d = len(x) // 2
        return fn(np.concatenate([x[:d] / e_scale, x[d:]]))

    psi0 = initial_state(cfg, inst.n)

    def scaled_jac(x: np.ndarray) -> np.ndarray:
        d = len(x) // 2
        return fd_jac_kernel(psi0, evo, cost_diag,
                             np.ascontiguousarray(x[:d]),
                             np.ascontiguousarray(x[d:]),
                             inst.n, e_scale, schedule.fd_step)

    def state_at(gammas, betas):
        return evolve(initial_state(cfg, inst.n).copy(), evo,
                      np.asarray(gammas), np.asarray(betas), inst.n)

    record.records.append(DepthRecord(
        depth=0, gammas=[], betas=[],
        cost=expectation(psi0, cost_diag), fidelity=fidelity(psi0, inst),
        n_iters=0, n_evals=0, converged=True))

    scan = landscape_scan(cfg, inst, schedule.scan_resolution)
    gammas = np.array([scan.gamma0])
    betas = np.array([scan.beta0])

    for depth in range(1, schedule.max_depth + 1):
        if depth > 1:
            gammas, betas = grow_parameters(gammas, betas,
                                            schedule.init_strategy)
        res = minimize(scaled_fn,
                       np.concatenate([gammas * e_scale, betas]), schedule,
                       jac=scaled_jac)
        gammas = res.params[:depth] / e_scale
        betas = res.params[depth:]
        record.records.append(DepthRecord(
            depth=depth, gammas=list(map(float, gammas)),
            betas=list(map(float, betas)), cost=res.cost,
            fidelity=fidelity(state_at(gammas, betas), inst),
            n_iters=res.n_iters, n_evals=res.n_evals,
            converged=res.converged))
    return record
