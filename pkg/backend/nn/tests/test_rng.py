import numpy as np
from django.test import SimpleTestCase

from .. import rng as rng_module
from ..rng import STREAM_DROPOUT, STREAM_INIT, Rng


class RngTestCase(SimpleTestCase):

    def test_reproducible(self):
        self.assertEqual(Rng(9).uniform(0, 1, 50).tobytes(), Rng(9).uniform(0, 1, 50).tobytes())

    def test_streams_are_independent(self):
        init = Rng(9, STREAM_INIT).uniform(0, 1, 50)
        dropout = Rng(9, STREAM_DROPOUT).uniform(0, 1, 50)
        self.assertFalse(np.array_equal(init, dropout))

    def test_stream_ids_are_distinct(self):
        ids = [value for name, value in vars(rng_module).items() if name.startswith("STREAM_")]
        self.assertEqual(len(ids), 6)
        self.assertEqual(len(set(ids)), len(ids))

    def test_draw_counter(self):
        rng = Rng(0)
        rng.permutation(10)
        rng.keep_mask(0.5, (2, 2))
        self.assertEqual(rng.draws, 2)
