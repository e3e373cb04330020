from django.core.management.base import BaseCommand, CommandError

from lvx.exceptions import command_error_handler
from tabular.constants import Schema
from ..config import build_run_config

RUN_OPTIONS = ("data", "schema", "k", "seed", "epochs_ae", "epochs_clf", "lr", "batch",
               "expansion", "jobs", "out", "synthetic", "stratified", "normal_only_ae")


class ExperimentCommand(BaseCommand):
    """Base for commands that take the shared run flags."""

    def add_run_arguments(self, parser):
        data_group = parser.add_argument_group('Data')
        data_group.add_argument('--data', help='CSV dataset path')
        data_group.add_argument('--schema', choices=[s.value for s in Schema], help='CSV schema (default: creditcard)')
        data_group.add_argument('--synthetic', help='Generate data instead: n=10000,anomaly=0.005,sep=2.5[,d=10]')
        data_group.add_argument('--k', type=int, help='Number of folds (default: 10)')
        data_group.add_argument('--stratified', action='store_true', default=None, help='Balance classes across folds')

        train_group = parser.add_argument_group('Training')
        train_group.add_argument('--seed', type=int, help='Run seed (fallback: LVX_SEED, then settings)')
        train_group.add_argument('--epochs-ae', type=int, help='Autoencoder epochs (default: 50)')
        train_group.add_argument('--epochs-clf', type=int, help='Classifier epochs (default: 20)')
        train_group.add_argument('--lr', type=float, help='Adam learning rate (default: 0.001)')
        train_group.add_argument('--batch', type=int, help='Mini-batch size (default: 256)')
        train_group.add_argument('--expansion', help='Expansion width, or comma-separated sweep for table 2')
        train_group.add_argument('--normal-only-ae', action='store_true', default=None,
                                 help='Train autoencoders on normal training rows only')

        run_group = parser.add_argument_group('Run')
        run_group.add_argument('--jobs', type=int, help='Parallel fold workers (default: 1)')
        run_group.add_argument('--out', help='Output directory')
        run_group.add_argument('--config', help='Flat key=value config file')

    def run_config(self, options):
        return build_run_config({name: options.get(name) for name in RUN_OPTIONS}, options.get('config'))

    def execute(self, *args, **options):
        try:
            return super().execute(*args, **options)
        except Exception as exc:
            if isinstance(exc, CommandError):
                raise
            raise command_error_handler(exc, self.__class__.__module__.rsplit(".", 1)[-1]) from exc
