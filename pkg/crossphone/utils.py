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
import io
import os
import unicodedata

from numpy.lib.stride_tricks import as_strided

from .errors import TableFormatError

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data')


def data_path(name):
    """Absolute path of a file shipped in ``crossphone/data``."""
    return os.path.join(DATA_DIR, name)


def read_table(path, min_fields, max_fields=None):
    """
    Iterate over the records of a tab separated data file.

    Blank lines are skipped and ``#`` starts a comment that runs to the end
    of the line. Every field is NFC normalized and stripped.

    Parameters
    ----------
    path : str
        File to read, UTF-8 encoded.
    min_fields : int
        Minimum number of fields per record.
    max_fields : int, optional
        Maximum number of fields per record. Defaults to ``min_fields``.

    Yields
    ------
    lineno : int
        1-based line number of the record.
    fields : list of str
        The record, padded with ``None`` up to ``max_fields``.
    """
    if max_fields is None:
        max_fields = min_fields

    with io.open(path, encoding='utf-8') as f:
        for lineno, line in enumerate(f, 1):
            line = line.split('#', 1)[0].rstrip('\r\n')
            if not line.strip():
                continue

            fields = [unicodedata.normalize('NFC', field.strip())
                      for field in line.split('\t')]
            if not min_fields <= len(fields) <= max_fields:
                if min_fields == max_fields:
                    expected = str(min_fields)
                else:
                    expected = "{} to {}".format(min_fields, max_fields)
                raise TableFormatError(
                    path, lineno,
                    "expected {} tab separated fields, found {}".format(
                        expected, len(fields),
                    ),
                )
            if not all(fields[:min_fields]):
                raise TableFormatError(path, lineno, "empty field")

            fields += [None] * (max_fields - len(fields))
            yield lineno, [field or None for field in fields]


def rolling_window(array, length):
    """
    Read-only view of every ``length`` long run along the first axis.

    An array of shape ``(T, ...)`` becomes ``(T - length + 1, length, ...)``
    with ``result[i]`` equal to ``array[i:i + length]``. No data is copied.

    Example
    -------
    >>> from numpy import arange
    >>> rolling_window(arange(5), 3)
    array([[0, 1, 2],
           [1, 2, 3],
           [2, 3, 4]])
    """
    if length < 1:
        raise ValueError("window length must be positive, got {}".format(
            length))
    if array.ndim == 0 or array.shape[0] < length:
        raise IndexError(
            "cannot take {}-long windows of an array of shape {}".format(
                length, array.shape))

    shape = (array.shape[0] - length + 1, length) + array.shape[1:]
    strides = (array.strides[0],) + array.strides
    return as_strided(array, shape, strides, writeable=False)
