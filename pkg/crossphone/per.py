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

from collections import OrderedDict, namedtuple
from dataclasses import dataclass

import pandas as pd

from .errors import PerError
from .tokens import SEPARATORS, PhonemeSequence

MATCH = 'match'
SUBSTITUTION = 'sub'
DELETION = 'del'
INSERTION = 'ins'

EditOp = namedtuple('EditOp', 'op ref_index hyp_index ref_token hyp_token')

BREAKDOWN_COLUMNS = ['insertions', 'deletions', 'substitutions',
                     'ref_length', 'per']


@dataclass(frozen=True)
class AlignmentResult:
    """
    Outcome of aligning a reference with a hypothesis.

    ``script`` lists one :class:`EditOp` per aligned position, in order.
    Indices are ``None`` on the side an operation does not touch.
    """
    insertions: int
    deletions: int
    substitutions: int
    ref_length: int
    script: tuple

    @property
    def matches(self):
        return self.ref_length - self.substitutions - self.deletions

    @property
    def errors(self):
        return self.insertions + self.deletions + self.substitutions

    @property
    def hyp_length(self):
        return self.matches + self.substitutions + self.insertions

    @property
    def rate(self):
        return self.errors / self.ref_length


def _units(seq, ignore_separators):
    if isinstance(seq, PhonemeSequence):
        units = seq.surfaces
    elif isinstance(seq, str):
        units = seq.split()
    else:
        units = list(seq)
    if ignore_separators:
        units = [u for u in units if str(u) not in SEPARATORS]
    return units


def align(reference, hypothesis, ignore_separators=False):
    """
    Minimal unit-cost alignment of two phoneme sequences.

    Parameters
    ----------
    reference : PhonemeSequence, str or sequence of tokens
        Must be non-empty.
    hypothesis : PhonemeSequence, str or sequence of tokens
    ignore_separators : bool, optional
        Drop ``$`` and ``|`` before aligning.

    Returns
    -------
    AlignmentResult

    Note
    -----
    When several alignments are optimal the edit script prefers, walking
    back from the end, a match, then a substitution, then a deletion, then
    an insertion.
    """
    ref = _units(reference, ignore_separators)
    hyp = _units(hypothesis, ignore_separators)
    n, m = len(ref), len(hyp)
    if n == 0:
        raise PerError("PER is undefined for an empty reference")

    cost = [list(range(m + 1))]
    for i in range(1, n + 1):
        r = ref[i - 1]
        prev = cost[-1]
        row = [i]
        left = i
        for j in range(1, m + 1):
            left = min(prev[j - 1] + (r != hyp[j - 1]), prev[j] + 1,
                       left + 1)
            row.append(left)
        cost.append(row)

    script = []
    counts = {SUBSTITUTION: 0, DELETION: 0, INSERTION: 0, MATCH: 0}
    i, j = n, m
    while i > 0 or j > 0:
        here = cost[i][j]
        if i and j and ref[i - 1] == hyp[j - 1] and \
           here == cost[i - 1][j - 1]:
            op = EditOp(MATCH, i - 1, j - 1, ref[i - 1], hyp[j - 1])
            i, j = i - 1, j - 1
        elif i and j and here == cost[i - 1][j - 1] + 1:
            op = EditOp(SUBSTITUTION, i - 1, j - 1, ref[i - 1], hyp[j - 1])
            i, j = i - 1, j - 1
        elif i and here == cost[i - 1][j] + 1:
            op = EditOp(DELETION, i - 1, None, ref[i - 1], None)
            i -= 1
        else:
            op = EditOp(INSERTION, None, j - 1, None, hyp[j - 1])
            j -= 1
        counts[op.op] += 1
        script.append(op)
    script.reverse()

    return AlignmentResult(
        insertions=counts[INSERTION],
        deletions=counts[DELETION],
        substitutions=counts[SUBSTITUTION],
        ref_length=n,
        script=tuple(script),
    )


def per(reference, hypothesis, ignore_separators=False):
    """
    Phoneme error rate, (I + D + S) / N.

    Returns
    -------
    float
        A fraction, 1.0 meaning 100%. Not clipped: a long hypothesis can
        score above 1.
    """
    return align(reference, hypothesis, ignore_separators).rate


def _pairs(pairs):
    if hasattr(pairs, 'items'):
        return list(pairs.items())
    return [(str(i), pair) for i, pair in enumerate(pairs)]


def corpus_per(pairs, ignore_separators=False):
    """
    Pooled phoneme error rate of many utterances.

    Parameters
    ----------
    pairs : dict or list
        ``utterance_id -> (reference, hypothesis)``, or a list of
        ``(reference, hypothesis)`` pairs numbered from 0.
    ignore_separators : bool, optional

    Returns
    -------
    rate : float
        Sum of errors over sum of reference lengths.
    breakdown : pd.DataFrame
        One row per utterance, indexed by utterance id, with the counts
        and that utterance's own rate.
    """
    items = _pairs(pairs)
    if not items:
        raise PerError("no utterances to score")

    rows = OrderedDict()
    for utt_id, (reference, hypothesis) in items:
        try:
            result = align(reference, hypothesis, ignore_separators)
        except PerError:
            raise PerError(
                "utterance {!r} has an empty reference".format(utt_id),
                utterance_id=utt_id)
        rows[utt_id] = [result.insertions, result.deletions,
                        result.substitutions, result.ref_length, result.rate]

    breakdown = pd.DataFrame.from_dict(
        rows, orient='index', columns=BREAKDOWN_COLUMNS)
    breakdown.index.name = 'utt_id'

    errors = breakdown[['insertions', 'deletions', 'substitutions']]
    rate = errors.values.sum() / breakdown['ref_length'].sum()
    return float(rate), breakdown
