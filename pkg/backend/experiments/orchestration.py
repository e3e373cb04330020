import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from celery import group
from django.conf import settings

from reports.tables import ReportLayout, assemble_report
from tabular.folds import kfold_split
from training.runner import FoldResult, Method, run_fold
from .config import load_run_dataset

logger = logging.getLogger(__name__)

# Tables 1 and 2 report a single train/test arrangement: fold 1.
SINGLE_SPLIT_FOLD = 0


@dataclass(frozen=True)
class FoldJob:
    method: Method
    fold: int
    expansion_dim: int

    @property
    def sort_key(self):
        return (self.method.value, self.fold, self.expansion_dim)

    def to_dict(self):
        return {"method": self.method.value, "fold": self.fold, "expansion_dim": self.expansion_dim}

    @classmethod
    def from_dict(cls, payload):
        return cls(method=Method(payload["method"]), fold=payload["fold"], expansion_dim=payload["expansion_dim"])

    def __str__(self):
        return f"{self.method.value}/fold{self.fold + 1}/E{self.expansion_dim}"


def plan_jobs(layout, config):
    """
    List the (method, fold, expansion) grid a layout needs.

    Returns:
        list of FoldJob in a fixed order
    """
    layout = ReportLayout(layout)

    def width(method):
        if method in (Method.LINEAR_RAW_E10, Method.LINEAR_RAW_E1024):
            return method.default_expansion_dim
        return config.expansion_override or method.default_expansion_dim

    if layout is ReportLayout.TABLE1:
        jobs = [FoldJob(m, SINGLE_SPLIT_FOLD, width(m)) for m in layout.methods]
    elif layout is ReportLayout.TABLE2:
        jobs = [FoldJob(Method.OURS_LATENT_CLF, SINGLE_SPLIT_FOLD, dim) for dim in config.expansion_dims]
    else:
        jobs = [FoldJob(m, fold, width(m)) for m in layout.methods for fold in range(config.k)]
    return sorted(jobs, key=lambda job: job.sort_key)


def fold_plan_for(dataset, config):
    return kfold_split(dataset.n_rows, config.k, config.seed, labels=dataset.labels, stratified=config.stratified)


def run_job(job, dataset, plan, config, keep_artifacts=False):
    started = time.perf_counter()
    result = run_fold(job.method, job.fold, dataset, plan, config.train, job.expansion_dim,
                      keep_artifacts=keep_artifacts)
    logger.info(f"Finished {job} in {time.perf_counter() - started:.1f}s: AUROC={result.auroc}")
    return result


def execute_jobs(jobs, dataset, plan, config):
    """
    Run fold jobs and return their results in job order.

    A configured Celery broker receives the jobs as a group. Otherwise jobs run
    in-process, on a pool of `config.jobs` threads when more than one worker
    is requested. Each job is seeded from (run seed, fold), so the mode never
    changes the numbers.
    """
    if not settings.CELERY_TASK_ALWAYS_EAGER:
        from .tasks import run_fold_task

        logger.info(f"Dispatching {len(jobs)} fold jobs to Celery")
        payload = config.to_dict()
        async_result = group(run_fold_task.s(payload, job.to_dict()) for job in jobs).apply_async()
        results = [FoldResult.from_dict(item) for item in async_result.get()]
    elif config.jobs > 1 and len(jobs) > 1:
        logger.info(f"Running {len(jobs)} fold jobs on {config.jobs} threads")
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(lambda job: run_job(job, dataset, plan, config), jobs))
    else:
        results = [run_job(job, dataset, plan, config) for job in jobs]

    by_key = {(r.method.value, r.fold, r.expansion_dim): r for r in results}
    return [by_key[job.sort_key] for job in jobs]


def reproduce(layout, config):
    """
    Run the full method grid of one report layout.

    Returns:
        (ExperimentReport, list of FoldResult, elapsed seconds)
    """
    layout = ReportLayout(layout)
    started = time.perf_counter()
    dataset = load_run_dataset(config)
    plan = fold_plan_for(dataset, config)
    jobs = plan_jobs(layout, config)
    logger.info(f"Reproducing {layout.name_slug}: {len(jobs)} jobs, N={dataset.n_rows}, K={config.k}")

    results = execute_jobs(jobs, dataset, plan, config)
    report = assemble_report(
        results,
        layout,
        k=config.k,
        seed=config.seed,
        expansion_dims=config.expansion_dims,
    )
    return report, results, time.perf_counter() - started
