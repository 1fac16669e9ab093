"""Suite registry and the verification runner.

A run is split into tasks, one per (suite, space) pair or one per suite when
the suite does not depend on a space. Tasks are pure, so they can go to a
process pool; the report is assembled in task order either way.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

from . import compositions as comp
from . import mcal, qcurv, residue, spaces
from .report import VerificationReport
from .spaces import SPACE_TAGS, ModelSpace, get_space


class ConfigError(ValueError):
    """Invalid run configuration; the CLI maps it to a usage error."""


@dataclass(frozen=True)
class RunConfig:
    spaces: tuple[str, ...] = SPACE_TAGS
    n_max: int = 6
    series_order: int | None = None
    suites: tuple[str, ...] = ("all",)
    numeric_pairs: tuple[tuple[int, int], ...] = qcurv.NUMERIC_PAIRS
    include_variants: bool = False
    jobs: int = 1

    @property
    def order(self) -> int:
        return self.series_order if self.series_order is not None else 2 * self.n_max + 2

    def echo(self) -> dict:
        return {
            "spaces": list(self.spaces),
            "N_max": self.n_max,
            "K": self.order,
            "suites": list(self.selected()),
            "numeric_pairs": [f"{q}:{p}" for q, p in self.numeric_pairs],
            "include_variants": self.include_variants,
        }

    def selected(self) -> tuple[str, ...]:
        if "all" in self.suites:
            return tuple(SUITES)
        return self.suites

    def validate(self) -> None:
        if self.n_max < 1:
            raise ConfigError("max order must be at least 1")
        if self.order < 2:
            raise ConfigError("series order must be at least 2")
        if self.jobs < 1:
            raise ConfigError("jobs must be at least 1")
        for tag in self.spaces:
            if tag not in SPACE_TAGS:
                raise ConfigError(f"unknown space {tag!r}")
        for name in self.suites:
            if name != "all" and name not in SUITES:
                raise ConfigError(f"unknown suite {name!r}")
        for q, p in self.numeric_pairs:
            if q < 1 or p < 1:
                raise ConfigError(f"numeric pair {q}:{p} needs positive dimensions")


@dataclass(frozen=True)
class Suite:
    name: str
    run: Callable[[VerificationReport, RunConfig, ModelSpace | None], None]
    per_space: bool = False


def _global(fn):
    return lambda report, cfg, space: fn(report, cfg)


def _restriction(report: VerificationReport, cfg: RunConfig) -> None:
    for half in ("plus", "minus"):
        for n in range(1, cfg.n_max + 1):
            spaces.check_restriction(report, n, half, cfg.numeric_pairs)


def _sum_zero(report: VerificationReport, cfg: RunConfig) -> None:
    if cfg.n_max < 2:
        report.note("sum_zero skipped: the coefficient sum needs N >= 2")
        return
    comp.check_sum_zero(report, cfg.n_max)


def _mystic(report: VerificationReport, cfg: RunConfig, space: ModelSpace) -> None:
    if cfg.n_max < 2:
        report.note(f"mystic skipped on {space}: needs N >= 2")
        return
    residue.check_mystic(report, space, cfg.n_max)


def _q_res(report: VerificationReport, cfg: RunConfig) -> None:
    for n in range(1, cfg.n_max + 1):
        residue.check_q_res_sphere(report, n)


def _sphere_defect(report: VerificationReport, cfg: RunConfig) -> None:
    qcurv.check_sphere_defect(report, cfg.n_max)


def _duality(report: VerificationReport, cfg: RunConfig, space: ModelSpace) -> None:
    qcurv.check_duality(report, space, cfg.order)


SUITE_LIST = [
    # coefficient identities
    Suite("tables", _global(lambda r, c: comp.check_tables(r))),
    Suite("sum_zero", _global(_sum_zero)),
    Suite("strong", _global(lambda r, c: comp.check_strong(r, c.n_max))),
    Suite("reversal", _global(lambda r, c: comp.check_reversal(r, c.n_max))),
    Suite("two_routes", _global(lambda r, c: comp.check_two_routes(r, c.n_max))),
    Suite("two_part", _global(lambda r, c: comp.check_two_part(r, c.n_max))),
    Suite("integrality", _global(lambda r, c: comp.check_integrality(r, c.n_max))),
    Suite("variation", _global(lambda r, c: comp.check_variation(r, c.n_max))),
    Suite("beta_kernel", _global(lambda r, c: comp.check_beta_kernel(r, c.n_max))),
    Suite("divergence_cancel", _global(lambda r, c: comp.check_divergence_cancel(r, c.n_max))),
    # operators on model spaces
    Suite("q_curv", lambda r, c, s: spaces.check_q_curvature(r, s, c.n_max), per_space=True),
    Suite("operator_degree", lambda r, c, s: spaces.check_operator_degree(r, s, c.n_max), per_space=True),
    Suite("univ", lambda r, c, s: spaces.check_univ(r, s, c.n_max), per_space=True),
    Suite("product_expansion", lambda r, c, s: spaces.check_product_expansion(r, s, c.n_max), per_space=True),
    Suite("linear_factors", _global(lambda r, c: spaces.check_linear_factors(r, c.n_max))),
    Suite("specialization", _global(lambda r, c: spaces.check_specialization(r, c.n_max))),
    Suite("restriction", _global(_restriction)),
    # M operators
    Suite("closed_form", lambda r, c, s: mcal.check_closed_form(r, s, c.n_max), per_space=True),
    Suite("nonlinear", lambda r, c, s: mcal.check_nonlinear(r, s, c.n_max), per_space=True),
    Suite("decomposition", lambda r, c, s: mcal.check_decomposition(r, s, c.n_max), per_space=True),
    Suite("leading_part", lambda r, c, s: mcal.check_leading_part(r, s, c.n_max), per_space=True),
    Suite("partial_sum", _global(lambda r, c: mcal.check_partial_sums(r, c.n_max))),
    Suite("generating_function", lambda r, c, s: mcal.check_generating_function(r, s, c.order),
          per_space=True),
    Suite("flat_divergence", lambda r, c, s: mcal.check_flat_divergence(r, s, c.n_max), per_space=True),
    # residue polynomials
    Suite("interpolation", lambda r, c, s: residue.check_interpolation(r, s, c.n_max), per_space=True),
    Suite("mystic", _mystic, per_space=True),
    Suite("q_res", _global(_q_res)),
    # Q-curvatures
    Suite("q_primary", _global(lambda r, c: qcurv.check_q_primary_table(r))),
    Suite("sphere_defect", _global(_sphere_defect)),
    Suite("volume", lambda r, c, s: qcurv.check_volume(r, s, c.order), per_space=True),
    Suite("duality", _duality, per_space=True),
    Suite("quadratic", lambda r, c, s: qcurv.check_quadratic(r, s, c.n_max), per_space=True),
    Suite("w_beta", lambda r, c, s: qcurv.check_w_beta(r, s, c.n_max), per_space=True),
    Suite("pseudo_final", _global(lambda r, c: qcurv.check_pseudo_final(r, c.n_max))),
    Suite("vanishing_critical", _global(lambda r, c: qcurv.check_vanishing_critical(r, c.numeric_pairs))),
    Suite("low_order", lambda r, c, s: qcurv.check_low_order(r, s, c.include_variants), per_space=True),
]
SUITES = {suite.name: suite for suite in SUITE_LIST}


@dataclass(frozen=True)
class Task:
    suite: str
    space: str | None = None


def plan(cfg: RunConfig) -> list[Task]:
    tasks = []
    for name in cfg.selected():
        suite = SUITES[name]
        if suite.per_space:
            tasks.extend(Task(name, tag) for tag in cfg.spaces)
        else:
            tasks.append(Task(name))
    return tasks


def run_task(task: Task, cfg: RunConfig) -> VerificationReport:
    report = VerificationReport(task.suite)
    space = get_space(task.space) if task.space else None
    SUITES[task.suite].run(report, cfg, space)
    return report


def run_verification(cfg: RunConfig) -> VerificationReport:
    cfg.validate()
    tasks = plan(cfg)
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            parts = list(pool.map(run_task, tasks, [cfg] * len(tasks)))
    else:
        parts = [run_task(task, cfg) for task in tasks]
    name = cfg.selected()[0] if len(cfg.selected()) == 1 else "all"
    report = VerificationReport(name, config=cfg.echo())
    for part in parts:
        report.extend(part)
    return report

