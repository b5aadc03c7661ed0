"""The verification matrix and its runner.

Each task is a picklable ``Task``; ``run_task`` resolves it through a registry
of plain functions so that the matrix can be spread over worker processes.
Reports are always returned sorted by check id, then parameters.
"""

from __future__ import annotations

import fnmatch
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable

from . import geometry, invariants, propagation, pwtransform, spectral, weylgrp
from .report import FAIL, Report, verdict
from .rootsys import quiet_build


class UnknownCheck(ValueError):
    pass


GROUPS = ("weyl", "invariants", "radius", "omega", "xi", "dim", "branch", "pw",
          "sigma-equivariance", "negative")

# rank ranges used when no cap is given; each is the acceptance range
FULL = {"weyl": 5, "invariants": 6, "omega": 6, "xi": 6, "dim": 4, "branch": 3, "pw": 4}
D_STRICT_PAIRS = ((4, 5), (4, 6), (5, 6))
RADIUS_RANKS = {"A": range(1, 9), "B": range(2, 9), "C": range(1, 9), "D": range(2, 9)}
LOWEST = {"A": 1, "B": 1, "C": 1, "D": 2}
OMEGA_LOWEST = {"A": 1, "B": 1, "C": 1, "D": 3}


@dataclass(frozen=True)
class Task:
    check: str
    func: str
    kwargs: tuple = ()
    params: tuple = ()

    def param_dict(self) -> dict[str, Any]:
        return dict(self.params)


def _task(check: str, func: str, params: dict, **kwargs) -> Task:
    return Task(check, func, tuple(sorted(kwargs.items())), tuple(sorted(params.items())))


# adapters returning Reports

def radius_report(kind: str, rank: int) -> Report:
    got = geometry.injectivity_radius(kind, rank)
    want = geometry.EXPECTED_RADIUS[kind]
    return Report("radius", {"type": kind, "rank": rank}, verdict(got.radius_over_pi == want),
                  {"radius": f"{got.radius_over_pi}*pi", "expected": f"{want}*pi",
                   "squared_coroot_lengths": {str(j): str(v) for j, v in got.squared_coroot_lengths}})


def omega_subset(kind: str, rank: int, samples: int, seed: int) -> Report:
    return geometry.check_omega_star_subset(kind, rank, samples, seed)


def omega_propagation(kind: str, n: int, k: int, samples: int, seed: int) -> Report:
    return geometry.check_omega_star_propagation(propagation.make_pair(kind, n, k), samples, seed)


def type_a_bound(rank: int) -> Report:
    ok = geometry.type_a_bound_identity(rank)
    return Report("omega.type-a-bound", {"rank": rank}, verdict(ok), {"symbolic_identity": ok})


def xi_system(kind: str, rank: int) -> Report:
    return propagation.check_class_one_system(quiet_build(kind, rank))


def xi_restriction(kind: str, n: int, k: int) -> Report:
    return propagation.check_xi_restriction(propagation.make_pair(kind, n, k))


def dim_identity(kind: str, rank: int, count: int) -> Report:
    rs = quiet_build(kind, rank)
    return pwtransform.Q_dim_identity(rs, pwtransform.dimension_weights(rs, count))


def branching(kind: str, n: int, k: int) -> Report:
    return spectral.check_branching(propagation.make_pair(kind, n, k))


def pw_surjectivity(kind: str, n: int, k: int, trials: int, seed: int) -> Report:
    return pwtransform.check_surjectivity_witness(propagation.make_pair(kind, n, k), trials, seed)


def sigma_control(rank: int, coeffs: tuple) -> Report:
    """The unswapped identity must fail for a weight that sigma moves."""
    inner = spectral.check_sigma_equivariance(rank, coeffs, swap=False)
    return Report("sigma-equivariance.control", {"rank": rank, "coeffs": list(coeffs)},
                  verdict(not inner.passed),
                  {"unswapped_identity_holds": inner.passed, **inner.details})


REGISTRY: dict[str, Callable[..., Report]] = {
    "weyl": weylgrp.check_weyl_restriction,
    "invariants.restriction": invariants.check_restriction_identities,
    "invariants.surjectivity": invariants.check_surjectivity,
    "radius": radius_report,
    "omega.subset": omega_subset,
    "omega.propagation": omega_propagation,
    "omega.type-a-bound": type_a_bound,
    "xi.system": xi_system,
    "xi.restriction": xi_restriction,
    "dim": dim_identity,
    "branch": branching,
    "pw.alt": pwtransform.check_alt_family,
    "pw.projective": pwtransform.check_projective,
    "pw.coeff": pwtransform.check_C_coeff,
    "pw.surjectivity": pw_surjectivity,
    "sigma-equivariance": spectral.check_sigma_equivariance,
    "sigma-equivariance.control": sigma_control,
    "negative": weylgrp.check_interior_removal,
}


@dataclass
class MatrixOptions:
    max_rank: int | None = None
    samples: int = 1000
    trials: int = 10
    seed: int = 0
    only: dict[str, Any] = field(default_factory=dict)


def _cap(group: str, opts: MatrixOptions) -> int:
    full = FULL[group]
    return full if opts.max_rank is None else min(full, max(opts.max_rank, 1))


def _pairs(kind: str, top: int, lowest: dict[str, int] = LOWEST):
    lo = lowest[kind]
    return [(n, k) for k in range(lo + 1, top + 1) for n in range(lo, k)]


def build_matrix(opts: MatrixOptions) -> list[Task]:
    seed, tasks = opts.seed, []
    top = _cap("weyl", opts)
    for kind in "ABC":
        for n, k in _pairs(kind, top):
            tasks.append(_task("weyl", "weyl", {"type": kind, "n": n, "k": k}, kind=kind, n=n, k=k))
    for n, k in D_STRICT_PAIRS:
        tasks.append(_task("weyl", "weyl", {"type": "D", "n": n, "k": k}, kind="D", n=n, k=k))

    top = _cap("invariants", opts)
    for kind in "ABCD":
        for n, k in _pairs(kind, top):
            p = {"type": kind, "n": n, "k": k}
            tasks.append(_task("invariants.restriction", "invariants.restriction", p, kind=kind, n=n, k=k))
            tasks.append(_task("invariants.surjectivity", "invariants.surjectivity", p, kind=kind, n=n, k=k))

    for kind, ranks in RADIUS_RANKS.items():
        for r in ranks:
            tasks.append(_task("radius", "radius", {"type": kind, "rank": r}, kind=kind, rank=r))

    top = _cap("omega", opts)
    for kind in "ABCD":
        for r in range(OMEGA_LOWEST[kind], top + 1):
            tasks.append(_task("omega.subset", "omega.subset", {"type": kind, "rank": r},
                               kind=kind, rank=r, samples=opts.samples, seed=seed))
        for n, k in _pairs(kind, top, OMEGA_LOWEST):
            tasks.append(_task("omega.propagation", "omega.propagation", {"type": kind, "n": n, "k": k},
                               kind=kind, n=n, k=k, samples=opts.samples, seed=seed))
    for r in range(1, top + 1):
        tasks.append(_task("omega.type-a-bound", "omega.type-a-bound", {"rank": r}, rank=r))

    top = _cap("xi", opts)
    for kind in "ABCD":
        for r in range(LOWEST[kind], top + 1):
            tasks.append(_task("xi.system", "xi.system", {"type": kind, "rank": r}, kind=kind, rank=r))
        for n, k in _pairs(kind, top):
            tasks.append(_task("xi.restriction", "xi.restriction", {"type": kind, "n": n, "k": k},
                               kind=kind, n=n, k=k))

    top = _cap("dim", opts)
    for kind in "ABCD":
        r = max(top, 2 if kind == "D" else 1)
        tasks.append(_task("dim", "dim", {"type": kind, "rank": r}, kind=kind, rank=r, count=20))

    top = _cap("branch", opts)
    for kind in "ABCD":
        for n, k in _pairs(kind, top):
            tasks.append(_task("branch", "branch", {"type": kind, "n": n, "k": k}, kind=kind, n=n, k=k))

    top = _cap("pw", opts)
    for kind in "ABCD":
        r = min(3, top)
        tasks.append(_task("pw.alt", "pw.alt", {"type": kind, "rank": r}, kind=kind, rank=r, seed=seed))
        lo = LOWEST[kind]
        for k in range(lo + 2, top + 1):
            for m in range(lo + 1, k):
                for n in range(lo, m):
                    tasks.append(_task("pw.projective", "pw.projective",
                                       {"type": kind, "n": n, "m": m, "k": k},
                                       kind=kind, n=n, m=m, k=k, trials=opts.trials, seed=seed))
        for n, k in _pairs(kind, top):
            p = {"type": kind, "n": n, "k": k}
            tasks.append(_task("pw.coeff", "pw.coeff", p, kind=kind, n=n, k=k, bound=3, seed=seed))
            tasks.append(_task("pw.surjectivity", "pw.surjectivity", p, kind=kind, n=n, k=k,
                               trials=5, seed=seed))

    for coeffs in ((0, 0, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1)):
        tasks.append(_task("sigma-equivariance", "sigma-equivariance",
                           {"rank": 4, "coeffs": coeffs}, rank=4, coeffs=coeffs))
    tasks.append(_task("sigma-equivariance.control", "sigma-equivariance.control",
                       {"rank": 4, "coeffs": (1, 0, 0, 0)}, rank=4, coeffs=(1, 0, 0, 0)))

    tasks.append(_task("negative", "negative", {"type": "B", "rank": 3, "removed": 1},
                       kind="B", rank=3, removed=1))
    return [t for t in tasks if _matches(t, opts.only)]


def _matches(task: Task, only: dict[str, Any]) -> bool:
    params = task.param_dict()
    return all(params.get(key) == value for key, value in only.items() if key in params)


def select(tasks: list[Task], pattern: str) -> list[Task]:
    if pattern == "all":
        return tasks
    if any(ch in pattern for ch in "*?["):
        chosen = [t for t in tasks if fnmatch.fnmatchcase(t.check, pattern)]
    else:
        chosen = [t for t in tasks if t.check == pattern or t.check.startswith(pattern + ".")]
    if not chosen and not any(pattern == g or pattern.startswith(g + ".") for g in GROUPS):
        raise UnknownCheck(pattern)
    return chosen


def run_task(task: Task) -> Report:
    start = time.perf_counter()
    report = REGISTRY[task.func](**dict(task.kwargs))
    report.seconds = time.perf_counter() - start
    return report


def sort_key(report: Report) -> tuple:
    # parameters of one check id share keys and value types, so values compare directly
    values = tuple(tuple(v) if isinstance(v, list) else v for v in report.params.values())
    return report.check, values, json.dumps(report.params, sort_keys=True, default=str)


def run_suite(pattern: str = "all", opts: MatrixOptions | None = None, jobs: int = 1) -> list[Report]:
    tasks = select(build_matrix(opts or MatrixOptions()), pattern)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(run_task, tasks))
    else:
        reports = [run_task(t) for t in tasks]
    return sorted(reports, key=sort_key)


def any_failed(reports: list[Report]) -> bool:
    return any(r.status == FAIL for r in reports)
