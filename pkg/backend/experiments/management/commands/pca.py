from pathlib import Path

from lvx.exceptions import InvalidInputError
from reports.pca import export_projection_csv, pca_fit, pca_project
from training.runner import Method
from ...config import RunConfig, load_run_dataset
from ...manifest import read_manifest
from ...orchestration import FoldJob, fold_plan_for, run_job
from ..base import ExperimentCommand

METHOD_CHOICES = {
    'ours': Method.OURS_LATENT_CLF,
    'ba': Method.BA_LATENT_CLF,
}


class Command(ExperimentCommand):
    help = 'Project one fold\'s classifier inputs onto two principal components for plotting'

    def add_arguments(self, parser):
        parser.add_argument('--run', required=True, help='Directory of a completed `reproduce` run')
        parser.add_argument('--fold', type=int, action='append', required=True,
                            help='Fold number 1..K (repeatable)')
        parser.add_argument('--method', action='append', choices=sorted(METHOD_CHOICES),
                            help='ours and/or ba (default: both)')
        parser.add_argument('--out', help='Output directory (default: the run directory)')

    def handle(self, *args, **options):
        run_dir = Path(options['run'])
        manifest = read_manifest(run_dir)
        if manifest is None:
            raise InvalidInputError(f"No manifest.json in {run_dir}; run `reproduce` first")
        config = RunConfig.from_dict(manifest['config'])
        out_dir = Path(options.get('out') or run_dir)

        for fold_number in options['fold']:
            if not 1 <= fold_number <= config.k:
                raise InvalidInputError(f"Unknown fold {fold_number}; the run has folds 1..{config.k}")

        dataset = load_run_dataset(config)
        plan = fold_plan_for(dataset, config)
        for name in options.get('method') or sorted(METHOD_CHOICES, reverse=True):
            method = METHOD_CHOICES[name]
            for fold_number in options['fold']:
                job = FoldJob(method, fold_number - 1, config.expansion_override or method.default_expansion_dim)
                result = run_job(job, dataset, plan, config, keep_artifacts=True)
                representation = result.artifacts.prediction.representation
                # Fit on the fold's test rows: the projection is for visualisation only.
                model = pca_fit(representation)
                path = export_projection_csv(
                    pca_project(model, representation),
                    result.artifacts.test_labels,
                    out_dir / f"pca_{name}_fold{fold_number}.csv",
                )
                self.stdout.write(self.style.SUCCESS(
                    f'{name} fold {fold_number}: explained variance '
                    f'{model.explained_variance[0]:.4g}, {model.explained_variance[1]:.4g} -> {path}'
                ))
