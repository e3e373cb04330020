import logging

from celery import shared_task

from .config import RunConfig, load_run_dataset

logger = logging.getLogger(__name__)


@shared_task
def run_fold_task(config_payload, job_payload):
    """
    Run one fold job on a worker.

    The dataset and fold plan are rebuilt from the run configuration, which
    reproduces exactly what the dispatching process would have used.
    """
    from .orchestration import FoldJob, fold_plan_for, run_job

    config = RunConfig.from_dict(config_payload)
    job = FoldJob.from_dict(job_payload)
    dataset = load_run_dataset(config)
    plan = fold_plan_for(dataset, config)
    logger.info(f"Worker running {job}")
    return run_job(job, dataset, plan, config).to_dict()
