from dataclasses import replace
from pathlib import Path

from lvx.exceptions import InvalidInputError
from lvx.utils import fold_seed
from training.runner import Method, fit_pipeline
from ...config import load_run_dataset
from ...orchestration import fold_plan_for
from ...pipelines import save_pipeline
from ..base import ExperimentCommand

CLASSIFIER_METHODS = [m.value for m in Method if m.uses_classifier]


class Command(ExperimentCommand):
    help = 'Train one pipeline (scaler, autoencoder, classifier) and write it as a checkpoint bundle'

    def add_arguments(self, parser):
        parser.add_argument('--method', default='Ours_latent_clf', choices=CLASSIFIER_METHODS,
                            help='Pipeline to train (default: Ours_latent_clf)')
        parser.add_argument('--fold', type=int,
                            help="Train on this fold's training rows (1..K) instead of all rows")
        self.add_run_arguments(parser)

    def handle(self, *args, **options):
        config = self.run_config(options)
        method = Method(options['method'])
        dataset = load_run_dataset(config)

        train = dataset
        cfg = config.train
        if options.get('fold') is not None:
            fold = options['fold'] - 1
            if not 0 <= fold < config.k:
                raise InvalidInputError(f"--fold must be in 1..{config.k}, got {options['fold']}")
            plan = fold_plan_for(dataset, config)
            train = dataset.subset(plan.train_indices(fold))
            cfg = replace(cfg, seed=fold_seed(config.seed, fold))

        self.stdout.write(f'Training {method.value} on {train.n_rows} rows (D={train.n_features})...')
        pipeline = fit_pipeline(method, train, cfg, config.expansion_override)
        out_dir = save_pipeline(pipeline, Path(config.out_dir), config.schema.value, dataset.column_names)
        self.stdout.write(self.style.SUCCESS(f'Pipeline written to {out_dir}'))
