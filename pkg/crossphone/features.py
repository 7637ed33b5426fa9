#
# Copyright 2024 crossphone developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
from __future__ import division

from functools import lru_cache

import librosa
import numpy as np
from scipy.signal import get_window

from .errors import ConfigError, ShapeError
from .periods import (
    DEFAULT_SHIFT,
    FRAME_LENGTH,
    LOG_FLOOR,
    N_MELS,
    SAMPLE_RATE,
    frame_shift,
)
from .utils import rolling_window


@lru_cache(maxsize=None)
def mel_filters(rate=SAMPLE_RATE, n_fft=FRAME_LENGTH, n_mels=N_MELS):
    """Triangular mel filterbank of shape ``(n_mels, n_fft // 2 + 1)``."""
    filters = librosa.filters.mel(sr=rate, n_fft=n_fft, n_mels=n_mels)
    filters.setflags(write=False)
    return filters


def n_frames(n_samples, period=DEFAULT_SHIFT, hop=None):
    """Number of analysis frames :func:`log_mel` returns."""
    if n_samples < FRAME_LENGTH:
        return 0
    return (n_samples - FRAME_LENGTH) // frame_shift(period, hop) + 1


def log_mel(samples, rate=SAMPLE_RATE, period=DEFAULT_SHIFT, hop=None):
    """
    Log mel spectrogram of 16 kHz audio.

    Frames are 25 ms long and Hann windowed; the magnitude spectrum of each
    frame goes through 80 triangular mel filters and is log compressed with
    a floor of 1e-10.

    Parameters
    ----------
    samples : array-like
        Mono audio. Resampling is the caller's job.
    rate : int, optional
        Sampling rate of ``samples``. Must be 16000.
    period : str, optional
        Frame shift. Can be '10ms' or '20ms'.
    hop : int, optional
        Frame shift in samples, overriding ``period``.

    Returns
    -------
    np.ndarray
        Shape ``(T, 80)`` with ``T = (len(samples) - 400) // hop + 1``.
    """
    if rate != SAMPLE_RATE:
        raise ConfigError(
            "audio must be sampled at {} Hz, got {}".format(SAMPLE_RATE, rate)
        )
    samples = np.asarray(samples, dtype=np.float64)
    if samples.ndim != 1:
        raise ShapeError(
            'log_mel', "expected mono audio, got shape {}".format(
                samples.shape))
    if len(samples) < FRAME_LENGTH:
        raise ShapeError(
            'log_mel',
            "{} samples is shorter than one {}-sample window".format(
                len(samples), FRAME_LENGTH))

    frames = rolling_window(samples, FRAME_LENGTH)[::frame_shift(period, hop)]
    window = get_window('hann', FRAME_LENGTH)
    magnitude = np.abs(np.fft.rfft(frames * window, n=FRAME_LENGTH, axis=1))
    mel = magnitude.dot(mel_filters().T)
    return np.log(np.maximum(mel, LOG_FLOOR))
