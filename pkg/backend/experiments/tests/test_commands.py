"""End-to-end tests for the management commands on small synthetic data."""
import json
import tempfile
from io import StringIO
from pathlib import Path

import numpy as np
import pandas as pd
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from tabular.constants import Schema
from tabular.datasets import load_csv
from training.config import TrainConfig
from training.runner import Method, fit_pipeline
from ..manifest import MANIFEST_NAME
from ..pipelines import CLASSIFIER_FILE

SMALL_RUN = {
    "synthetic": "n=300,anomaly=0.1,sep=4,d=6",
    "k": 3,
    "epochs_ae": 2,
    "epochs_clf": 2,
    "batch": 64,
    "expansion": "16",
    "seed": 7,
}


class CommandTestCase(SimpleTestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.root = Path(self.tmp.name)

    def call(self, name, *args, **options):
        out = StringIO()
        call_command(name, *args, stdout=out, stderr=StringIO(), **options)
        return out.getvalue()


class ReproduceCommandTestCase(CommandTestCase):

    def test_table4_writes_reports_and_manifest(self):
        out_dir = self.root / "run"
        output = self.call("reproduce", table="4", out=str(out_dir), **SMALL_RUN)
        self.assertIn("Reports written", output)
        frame = pd.read_csv(out_dir / "table4.csv", dtype=str)
        self.assertEqual(len(frame), 2 * (3 + 2))
        self.assertEqual(set(frame["seed"]), {"7"})
        manifest = json.loads((out_dir / MANIFEST_NAME).read_text(encoding="utf-8"))
        self.assertEqual(manifest["table"], "4")
        self.assertEqual(manifest["config"]["seed"], 7)
        self.assertEqual(len(manifest["jobs"]), 6)
        self.assertTrue((out_dir / "table4.txt").exists())

    def test_report_bytes_independent_of_jobs(self):
        first, second, parallel = self.root / "a", self.root / "b", self.root / "c"
        self.call("reproduce", table="4", out=str(first), jobs=1, **SMALL_RUN)
        self.call("reproduce", table="4", out=str(second), jobs=1, **SMALL_RUN)
        self.call("reproduce", table="4", out=str(parallel), jobs=4, **SMALL_RUN)
        expected = (first / "table4.csv").read_bytes()
        self.assertEqual((second / "table4.csv").read_bytes(), expected)
        self.assertEqual((parallel / "table4.csv").read_bytes(), expected)

    def test_table2_has_four_dimension_rows(self):
        options = dict(SMALL_RUN, expansion=None, epochs_ae=1, epochs_clf=1)
        self.call("reproduce", table="2", out=str(self.root / "t2"), **options)
        frame = pd.read_csv(self.root / "t2" / "table2.csv", dtype=str)
        dims = [key for key in frame["fold_or_dim"] if key not in ("mean", "std")]
        self.assertEqual(dims, ["128", "256", "512", "1024"])

    def test_single_class_fold_warns_but_succeeds(self):
        options = dict(SMALL_RUN, synthetic="n=40,anomaly=0.025,sep=3,d=4", k=2)
        output = self.call("reproduce", table="3", out=str(self.root / "t3"), **options)
        self.assertIn("AUROC undefined", output)
        frame = pd.read_csv(self.root / "t3" / "table3.csv", dtype=str, keep_default_na=False)
        self.assertIn("undefined", set(frame["auroc"]))

    def test_missing_dataset_names_schema(self):
        with self.assertRaises(CommandError) as ctx:
            self.call("reproduce", table="1", data=str(self.root / "creditcard.csv"), out=str(self.root / "x"))
        self.assertIn("Time, V1", str(ctx.exception))
        self.assertEqual(ctx.exception.returncode, 2)


class TrainScoreCommandTestCase(CommandTestCase):

    def setUp(self):
        super().setUp()
        self.data_path = self.root / "train.csv"
        self.call("gen_data", out=str(self.data_path), n_normal=900, n_anomaly=100, d=4, separation=3.0, seed=1)
        self.bundle = self.root / "model"
        self.call(
            "train", method="Ours_latent_clf", data=str(self.data_path), schema="generic",
            epochs_ae=1, epochs_clf=1, expansion="16", seed=3, out=str(self.bundle),
        )

    def test_scores_match_in_process_pipeline(self):
        scored_path = self.root / "scored.csv"
        self.call("score", str(self.data_path), checkpoint=str(self.bundle), output=str(scored_path))

        dataset = load_csv(self.data_path, Schema.GENERIC)
        cfg = TrainConfig(ae_epochs=1, clf_epochs=1, lr=0.001, batch_size=256, seed=3)
        expected = fit_pipeline(Method.OURS_LATENT_CLF, dataset, cfg, 16).predict(dataset.features)

        scored = pd.read_csv(scored_path, float_precision="round_trip")
        self.assertEqual(len(scored), 1000)
        self.assertEqual(scored["score_logit"].to_numpy().tobytes(), expected.scores.tobytes())
        np.testing.assert_allclose(scored["score_probability"], np.exp(expected.log_prob))

    def test_original_cells_preserved(self):
        scored_path = self.root / "scored.csv"
        self.call("score", str(self.data_path), checkpoint=str(self.bundle), output=str(scored_path))
        original = pd.read_csv(self.data_path, dtype=str)
        scored = pd.read_csv(scored_path, dtype=str)
        pd.testing.assert_frame_equal(scored[original.columns], original)
        self.assertEqual(list(scored.columns[-2:]), ["score_logit", "score_probability"])

    def test_wrong_width_names_expected_dimension(self):
        wide = self.root / "wide.csv"
        self.call("gen_data", out=str(wide), n_normal=20, n_anomaly=5, d=5, seed=2)
        with self.assertRaises(CommandError) as ctx:
            self.call("score", str(wide), checkpoint=str(self.bundle))
        self.assertIn("D=4", str(ctx.exception))

    def test_truncated_checkpoint(self):
        path = self.bundle / CLASSIFIER_FILE
        path.write_bytes(path.read_bytes()[:-1])
        with self.assertRaises(CommandError) as ctx:
            self.call("score", str(self.data_path), checkpoint=str(self.bundle))
        self.assertIn("Format Error", str(ctx.exception))

    def test_undecodable_input_is_a_parse_error(self):
        broken = self.root / "broken.csv"
        broken.write_bytes(b"x0,x1,x2,x3,Class\n\xff\xfe,1,2,3,0\n")
        with self.assertRaises(CommandError) as ctx:
            self.call("score", str(broken), checkpoint=str(self.bundle))
        self.assertIn("Parse Error", str(ctx.exception))
        self.assertEqual(ctx.exception.returncode, 2)

    def test_bundle_without_latent_scaler(self):
        manifest = self.bundle / "pipeline.json"
        payload = json.loads(manifest.read_text(encoding="utf-8"))
        payload["latent_scaler"] = None
        manifest.write_text(json.dumps(payload), encoding="utf-8")
        with self.assertRaises(CommandError) as ctx:
            self.call("score", str(self.data_path), checkpoint=str(self.bundle))
        self.assertIn("latent scaler", str(ctx.exception))

    def test_fold_training(self):
        bundle = self.root / "fold2"
        output = self.call(
            "train", data=str(self.data_path), schema="generic", fold=2, k=5,
            epochs_ae=1, epochs_clf=1, expansion="8", out=str(bundle),
        )
        self.assertIn("on 800 rows", output)
        payload = json.loads((bundle / "pipeline.json").read_text(encoding="utf-8"))
        self.assertEqual(payload["columns"], ["x0", "x1", "x2", "x3"])
        self.assertFalse(payload["latent_scaler"]["clip"])
        self.assertEqual(len(payload["latent_scaler"]["minimum"]), 4)

    def test_unknown_fold(self):
        with self.assertRaises(CommandError):
            self.call("train", data=str(self.data_path), schema="generic", fold=11, out=str(self.root / "f"))


class PcaCommandTestCase(CommandTestCase):

    def setUp(self):
        super().setUp()
        self.run_dir = self.root / "run"
        options = dict(SMALL_RUN, synthetic="n=500,anomaly=0.2,sep=6,d=6", epochs_ae=5, epochs_clf=3)
        self.call("reproduce", table="4", out=str(self.run_dir), **options)

    def test_projection_separates_classes(self):
        self.call("pca", run=str(self.run_dir), fold=[1], method=["ours"])
        frame = pd.read_csv(self.run_dir / "pca_ours_fold1.csv")
        self.assertEqual(list(frame.columns), ["pc1", "pc2", "label"])
        points = frame[["pc1", "pc2"]].to_numpy()
        labels = frame["label"].to_numpy()
        gap = points[labels == 1].mean(axis=0) - points[labels == 0].mean(axis=0)
        direction = gap / np.linalg.norm(gap)
        spread = max(np.std(points[labels == c] @ direction, ddof=1) for c in (0, 1))
        self.assertGreater(np.linalg.norm(gap), 2 * spread)

    def test_both_methods_by_default(self):
        self.call("pca", run=str(self.run_dir), fold=[2])
        self.assertTrue((self.run_dir / "pca_ours_fold2.csv").exists())
        self.assertTrue((self.run_dir / "pca_ba_fold2.csv").exists())

    def test_unknown_fold(self):
        with self.assertRaises(CommandError):
            self.call("pca", run=str(self.run_dir), fold=[4])

    def test_missing_run(self):
        with self.assertRaises(CommandError):
            self.call("pca", run=str(self.root / "absent"), fold=[1])


class GenDataCommandTestCase(CommandTestCase):

    def test_synthetic_spec(self):
        path = self.root / "gen.csv"
        output = self.call("gen_data", out=str(path), synthetic="n=1000,anomaly=0.01,sep=2", seed=0)
        self.assertIn("10 anomalies", output)
        dataset = load_csv(path, Schema.GENERIC)
        self.assertEqual((dataset.n_rows, dataset.n_features, dataset.anomaly_count), (1000, 10, 10))

    def test_bad_spec(self):
        with self.assertRaises(CommandError):
            self.call("gen_data", out=str(self.root / "bad.csv"), synthetic="n=10")

    def test_zero_counts_rejected(self):
        for counts in ({"n_normal": 0, "n_anomaly": 5}, {"n_normal": 5, "n_anomaly": 0}):
            with self.subTest(**counts), self.assertRaises(CommandError) as ctx:
                self.call("gen_data", out=str(self.root / "zero.csv"), seed=0, **counts)
            self.assertIn("class counts must be >= 1", str(ctx.exception))
            self.assertEqual(ctx.exception.returncode, 2)
            self.assertFalse((self.root / "zero.csv").exists())
