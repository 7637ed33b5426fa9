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
from .errors import ConfigError

SAMPLE_RATE = 16000

# 25 ms analysis window
FRAME_LENGTH = 400

N_MELS = 80
LOG_FLOOR = 1e-10

SHIFT_10MS = '10ms'
SHIFT_20MS = '20ms'

FRAME_SHIFTS = {
    SHIFT_10MS: 160,
    SHIFT_20MS: 320,
}

DEFAULT_SHIFT = SHIFT_10MS

# speaking-rate estimate used when a lexicon entry has no duration hint
SECONDS_PER_SYLLABLE = 0.3


def frame_shift(period=DEFAULT_SHIFT, hop=None):
    """
    Number of samples between successive analysis frames.

    Parameters
    ----------
    period : str, optional
        Named frame shift. Can be '10ms' or '20ms'.
    hop : int, optional
        Explicit shift in samples. Overrides ``period`` when given.

    Returns
    -------
    int
        Frame shift in samples at :data:`SAMPLE_RATE`.
    """
    if hop is None:
        try:
            return FRAME_SHIFTS[period]
        except KeyError:
            raise ConfigError(
                "Period cannot be '{}'. "
                "Can be '{}'.".format(
                    period, "', '".join(FRAME_SHIFTS.keys())
                )
            )
    if hop < 1:
        raise ConfigError("hop must be a positive number of samples")
    return hop
