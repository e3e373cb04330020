from pathlib import Path

from lvx.utils import resolve_seed
from tabular.datasets import export_csv
from tabular.synthetic import SyntheticParams, gen_synthetic
from ..base import ExperimentCommand


class Command(ExperimentCommand):
    help = 'Generate a synthetic imbalanced dataset in the generic CSV schema'

    def add_arguments(self, parser):
        parser.add_argument('--out', required=True, help='CSV path to write')
        parser.add_argument('--synthetic', help='n=10000,anomaly=0.005,sep=2.5[,d=10]')
        parser.add_argument('--n-normal', type=int, help='Normal rows (alternative to --synthetic)')
        parser.add_argument('--n-anomaly', type=int, help='Anomalous rows')
        parser.add_argument('--d', type=int, default=10, help='Feature width (default: 10)')
        parser.add_argument('--separation', type=float, default=2.5, help='Class-mean distance (default: 2.5)')
        parser.add_argument('--seed', type=int, help='Generator seed (fallback: LVX_SEED)')

    def handle(self, *args, **options):
        seed = resolve_seed(options.get('seed'))
        if options.get('synthetic'):
            dataset = SyntheticParams.parse(options['synthetic']).generate(seed)
        else:
            dataset = gen_synthetic(
                9950 if options.get('n_normal') is None else options['n_normal'],
                50 if options.get('n_anomaly') is None else options['n_anomaly'],
                options['d'],
                options['separation'],
                seed,
            )
        path = export_csv(dataset, Path(options['out']))
        summary = dataset.summary()
        self.stdout.write(self.style.SUCCESS(
            f"Wrote {summary['rows']} rows ({summary['anomalies']} anomalies, D={summary['features']}) to {path}"
        ))
