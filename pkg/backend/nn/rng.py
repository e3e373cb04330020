import numpy as np

# Stream ids for independent draws derived from one seed.
STREAM_INIT = 0
STREAM_SHUFFLE = 1
STREAM_DROPOUT = 2
STREAM_DATA = 3
STREAM_CLASSIFIER_INIT = 4
STREAM_FOLDS = 5


class Rng:
    """
    Seeded random stream.

    Backed by numpy's PCG64 bit generator, whose output for a given seed is
    fixed across platforms and numpy releases. `stream` selects an independent
    sub-stream of the same seed.
    """

    def __init__(self, seed, stream=0):
        self.seed = int(seed)
        self.stream = int(stream)
        sequence = np.random.SeedSequence([self.seed & 0xFFFFFFFFFFFFFFFF, self.stream])
        self._generator = np.random.Generator(np.random.PCG64(sequence))
        self.draws = 0

    def __repr__(self):
        return f"Rng(seed={self.seed}, stream={self.stream}, draws={self.draws})"

    def uniform(self, low, high, shape):
        self.draws += 1
        return self._generator.uniform(low, high, size=shape)

    def normal(self, shape):
        self.draws += 1
        return self._generator.standard_normal(size=shape)

    def keep_mask(self, keep_probability, shape):
        """Boolean mask where each entry is True with `keep_probability`."""
        self.draws += 1
        return self._generator.random(size=shape) < keep_probability

    def permutation(self, n):
        self.draws += 1
        return self._generator.permutation(n)
