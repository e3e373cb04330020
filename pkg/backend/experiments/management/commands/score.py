from pathlib import Path

import numpy as np
import pandas as pd

from lvx.exceptions import DimensionError, InvalidInputError
from tabular.datasets import load_csv
from ...pipelines import load_pipeline
from ..base import ExperimentCommand


class Command(ExperimentCommand):
    help = 'Score a CSV with a trained pipeline bundle, appending logit and probability columns'

    def add_arguments(self, parser):
        parser.add_argument('input', help='CSV file to score')
        parser.add_argument('--checkpoint', required=True, help='Pipeline bundle directory written by `train`')
        parser.add_argument('--output', help='Scored CSV path (default: <input>.scored.csv)')

    def handle(self, *args, **options):
        pipeline, meta = load_pipeline(options['checkpoint'])
        input_path = Path(options['input'])
        if not input_path.exists():
            raise InvalidInputError(f"Input file not found: {input_path}")

        dataset = load_csv(input_path, meta['schema'] or 'generic', require_labels=False)
        if dataset.n_features != pipeline.n_features:
            raise DimensionError(
                f"{input_path} has {dataset.n_features} feature columns; the checkpoint expects D={pipeline.n_features}"
                f" ({', '.join(meta['columns'])})"
            )
        if meta['columns'] and list(dataset.column_names) != list(meta['columns']):
            raise DimensionError(f"feature columns differ from training: expected {', '.join(meta['columns'])}")

        prediction = pipeline.predict(dataset.features)
        # Keep the original cell text; only the score columns are new.
        frame = pd.read_csv(input_path, dtype=str, keep_default_na=False, encoding="utf-8")
        frame['score_logit'] = [repr(float(v)) for v in prediction.scores]
        frame['score_probability'] = [repr(float(v)) for v in np.exp(prediction.log_prob)]

        output = Path(options['output'] or input_path.with_suffix('.scored.csv'))
        output.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(output, index=False, lineterminator="\n")
        self.stdout.write(self.style.SUCCESS(f'Scored {len(frame)} rows -> {output}'))
