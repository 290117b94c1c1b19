"""
Tests para los subflujos aleatorios por trama
"""

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent.parent / "scripts"))

from utils.substreams import SEED_MASK, frame_rng


@pytest.mark.unit
class TestFrameRng:

    def test_same_key_same_stream(self):
        a = frame_rng(7, 2, 31).random(8)
        b = frame_rng(7, 2, 31).random(8)
        assert np.array_equal(a, b)

    @pytest.mark.parametrize("key", [(8, 2, 31), (7, 3, 31), (7, 2, 32)])
    def test_different_keys_differ(self, key):
        assert not np.array_equal(frame_rng(7, 2, 31).random(8), frame_rng(*key).random(8))

    def test_snr_and_frame_indices_not_interchangeable(self):
        assert not np.array_equal(frame_rng(0, 1, 2).random(4), frame_rng(0, 2, 1).random(4))

    def test_full_64_bit_seed(self):
        frame_rng(SEED_MASK, 0, 0).random()

    def test_negative_index_raises(self):
        with pytest.raises(ValueError):
            frame_rng(0, -1, 0)
