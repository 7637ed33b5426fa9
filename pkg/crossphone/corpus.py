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
"""Synthetic bilingual corpus manifests.

Three subsets are built from a pronunciation lexicon: ``en_native``
(standard English phonemes), ``vietlish`` (words localized into Vietnamese
syllables) and ``iev`` (Vietnamese carrier sentences with localized words
in their slots). Records point at audio to be synthesized elsewhere.
"""
from __future__ import division

import hashlib
import io
import json
import logging
from collections import OrderedDict
from dataclasses import dataclass

import numpy as np
import pandas as pd

from .errors import (
    CorpusBuildError,
    CrossphoneError,
    ManifestError,
    TemplateError,
)
from .g2p import map_standard, parse_ipa
from .periods import SECONDS_PER_SYLLABLE
from .syllables import normalize, parse_syllable, text_to_phonemes
from .tokens import (
    ENGLISH_SEPARATOR,
    SYLLABLE_SEPARATOR,
    load_default_inventory,
    parse_sequence,
    serialize,
)
from .utils import data_path, read_table
from .vietlish import localize, localize_to_phonemes, localized_text

log = logging.getLogger(__name__)

EN_NATIVE = 'en_native'
VIETLISH = 'vietlish'
IEV = 'iev'
SUBSETS = (EN_NATIVE, VIETLISH, IEV)

FIELDS = ('id', 'subset', 'text', 'phonemes', 'audio_ref', 'duration_s')

REJECT_FIELDS = ['subset', 'word', 'message']

SLOT = '_'

MAX_REJECT_RATE = 0.05

SECONDS_PER_HOUR = 3600


@dataclass(frozen=True)
class CorpusRecord:
    id: str
    subset: str
    text: str
    phonemes: str
    audio_ref: str
    duration_s: float

    def to_json(self):
        return json.dumps(
            OrderedDict((f, getattr(self, f)) for f in FIELDS),
            ensure_ascii=False,
        )


@dataclass(frozen=True)
class CarrierTemplate:
    """A Vietnamese sentence with ``_`` slots for localized words."""
    text: str

    @property
    def words(self):
        return self.text.split()

    @property
    def n_slots(self):
        return sum(1 for w in self.words if w == SLOT)

    def fill(self, fillers):
        fillers = iter(fillers)
        return ' '.join(next(fillers) if w == SLOT else w
                        for w in self.words)


def load_templates(path=None):
    """
    Load carrier sentences, one per line.

    Every word except the ``_`` slots must parse as a Vietnamese syllable,
    and each template needs at least one slot.

    Returns
    -------
    list of CarrierTemplate
    """
    path = path or data_path('templates.txt')
    templates = []
    for lineno, (text,) in read_table(path, 1):
        text = normalize(text)
        template = CarrierTemplate(text)
        if template.n_slots == 0:
            raise TemplateError(
                "{}:{}: template has no '{}' slot".format(
                    path, lineno, SLOT))
        for index, word in enumerate(template.words):
            if word == SLOT:
                continue
            try:
                parse_syllable(word)
            except CrossphoneError as e:
                raise TemplateError(
                    "{}:{}: word {} ({!r}): {}".format(
                        path, lineno, index, word, e))
        templates.append(template)
    return templates


def audio_ref(subset, utt_id, audio_root='audio'):
    return '{}/{}/{}.wav'.format(audio_root, subset, utt_id)


def estimate_duration(n_syllables):
    return round(n_syllables * SECONDS_PER_SYLLABLE, 3)


def _check_rejects(subset, n_rejected, n_total, max_reject_rate):
    if n_total and n_rejected / n_total > max_reject_rate:
        raise CorpusBuildError(
            "{}: {} of {} entries rejected, more than {:.0%}".format(
                subset, n_rejected, n_total, max_reject_rate)
        )
    if n_rejected:
        log.info("%s: rejected %d of %d entries", subset, n_rejected,
                 n_total)


def _reject(rejects, subset, key, error):
    log.warning("%s: rejecting %r: %s", subset, key, error)
    if rejects is not None:
        rejects.append((subset, key, str(error)))


def build_en_native(lexicon, vocab=None, rejects=None,
                    max_reject_rate=MAX_REJECT_RATE, audio_root='audio'):
    """
    Standard English records, one per lexicon word.

    Parameters
    ----------
    lexicon : list of IpaLexiconEntry
    vocab : PhonemeVocabulary, optional
    rejects : list, optional
        Receives ``(subset, word, message)`` for every rejected entry.
    max_reject_rate : float, optional
        Build fails when more than this fraction of entries is rejected.
    audio_root : str, optional
        Prefix of the audio references.

    Returns
    -------
    list of CorpusRecord
        Sorted by id.
    """
    vocab = vocab or load_default_inventory()
    records = []
    n_rejected = 0
    for entry in lexicon:
        try:
            syllables = parse_ipa(entry.ipa)
            phonemes = map_standard(syllables, vocab)
        except CrossphoneError as e:
            n_rejected += 1
            _reject(rejects, EN_NATIVE, entry.word, e)
            continue
        utt_id = '{}-{}'.format(EN_NATIVE, entry.word)
        duration = entry.duration_hint
        if duration is None:
            duration = estimate_duration(len(syllables))
        records.append(CorpusRecord(
            utt_id, EN_NATIVE, entry.word, serialize(phonemes),
            audio_ref(EN_NATIVE, utt_id, audio_root), duration,
        ))

    _check_rejects(EN_NATIVE, n_rejected, len(lexicon), max_reject_rate)
    return sorted(records, key=lambda r: r.id)


def _localize_lexicon(lexicon, overrides, rejects, subset):
    localized = []
    for entry in lexicon:
        try:
            syllables = localize(entry.word, parse_ipa(entry.ipa), overrides)
        except CrossphoneError as e:
            _reject(rejects, subset, entry.word, e)
            continue
        localized.append((entry, syllables))
    return localized


def build_vietlish(lexicon, vocab=None, overrides=None, rejects=None,
                   max_reject_rate=MAX_REJECT_RATE, audio_root='audio'):
    """
    Localized records, one per lexicon word.

    The record text is the Vietnamese spelling of the localized word, e.g.
    ``in bóc`` for *inbox*.

    Returns
    -------
    list of CorpusRecord
        Sorted by id.
    """
    vocab = vocab or load_default_inventory()
    records = []
    localized = _localize_lexicon(lexicon, overrides, rejects, VIETLISH)
    n_rejected = len(lexicon) - len(localized)
    for entry, syllables in localized:
        try:
            phonemes = localize_to_phonemes(
                entry.word, parse_ipa(entry.ipa), vocab, overrides)
        except CrossphoneError as e:
            n_rejected += 1
            _reject(rejects, VIETLISH, entry.word, e)
            continue
        utt_id = '{}-{}'.format(VIETLISH, entry.word)
        duration = entry.duration_hint
        if duration is None:
            duration = estimate_duration(len(syllables))
        records.append(CorpusRecord(
            utt_id, VIETLISH, localized_text(syllables), serialize(phonemes),
            audio_ref(VIETLISH, utt_id, audio_root), duration,
        ))

    _check_rejects(VIETLISH, n_rejected, len(lexicon), max_reject_rate)
    return sorted(records, key=lambda r: r.id)


def build_iev(lexicon, templates, vocab=None, seed=0, per_template=2,
              overrides=None, rejects=None, max_reject_rate=MAX_REJECT_RATE,
              audio_root='audio'):
    """
    Interleaved Vietnamese-English sentences.

    Each template is filled ``per_template`` times with localized words
    drawn by a generator seeded with ``seed``; the whole sentence is then
    converted by the Vietnamese syllable parser.

    Parameters
    ----------
    lexicon : list of IpaLexiconEntry
    templates : list of CarrierTemplate
    vocab : PhonemeVocabulary, optional
    seed : int
        Same seed, same manifest.
    per_template : int, optional
        Sentences generated from each template.

    Returns
    -------
    list of CorpusRecord
        Sorted by id.
    """
    vocab = vocab or load_default_inventory()
    if not templates:
        return []

    localized = _localize_lexicon(
        sorted(lexicon, key=lambda e: e.word), overrides, rejects, IEV)
    _check_rejects(IEV, len(lexicon) - len(localized), len(lexicon),
                   max_reject_rate)
    if not localized:
        raise CorpusBuildError("no localized words to fill the templates")

    fillers = [localized_text(syllables) for _, syllables in localized]
    rand = np.random.RandomState(seed)
    records = []
    for t, template in enumerate(templates):
        for k in range(per_template):
            picks = rand.randint(len(fillers), size=template.n_slots)
            text = template.fill(fillers[p] for p in picks)
            phonemes = text_to_phonemes(text, vocab)
            utt_id = '{}-{:03d}-{:02d}'.format(IEV, t, k)
            records.append(CorpusRecord(
                utt_id, IEV, text, serialize(phonemes),
                audio_ref(IEV, utt_id, audio_root),
                estimate_duration(len(text.split())),
            ))
    return sorted(records, key=lambda r: r.id)


def write_manifest(records, path):
    """Write records as JSON lines with a fixed field order."""
    with io.open(path, 'w', encoding='utf-8', newline='\n') as f:
        for record in records:
            f.write(record.to_json())
            f.write('\n')


def write_rejects(rejects, path):
    """
    Write the rejects report as TSV with a ``subset word message`` header.

    Parameters
    ----------
    rejects : list of tuple
        ``(subset, word, message)`` as collected by the builders.
    path : str
    """
    report = pd.DataFrame(list(rejects), columns=REJECT_FIELDS)
    report['message'] = report['message'].str.replace(
        r'\s+', ' ', regex=True)
    report.to_csv(path, sep='\t', index=False, encoding='utf-8')


def read_manifest(path):
    """
    Read a JSON lines manifest.

    Raises
    ------
    ManifestError
        A line is not a JSON object with exactly the record fields.
    """
    records = []
    with io.open(path, encoding='utf-8') as f:
        for lineno, line in enumerate(f, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except ValueError as e:
                raise ManifestError("not JSON: {}".format(e), lineno)
            if not isinstance(obj, dict) or set(obj) != set(FIELDS):
                raise ManifestError(
                    "expected fields {}".format(', '.join(FIELDS)), lineno)
            try:
                duration = float(obj['duration_s'])
            except (TypeError, ValueError):
                raise ManifestError("duration_s is not a number", lineno)
            records.append(CorpusRecord(
                str(obj['id']), obj['subset'], obj['text'], obj['phonemes'],
                obj['audio_ref'], duration,
            ))
    return records


def validate_record(record, vocab=None):
    """Raise if the record's phonemes do not fit its subset."""
    vocab = vocab or load_default_inventory()
    if record.subset not in SUBSETS:
        raise ManifestError("unknown subset {!r}".format(record.subset))
    try:
        seq = parse_sequence(record.phonemes, vocab)
    except CrossphoneError as e:
        raise ManifestError("phonemes: {}".format(e))
    if not len(seq):
        raise ManifestError("empty phoneme sequence")
    surfaces = seq.surfaces
    if record.subset == EN_NATIVE and SYLLABLE_SEPARATOR in surfaces:
        raise ManifestError("en_native record contains '$'")
    if record.subset == VIETLISH and ENGLISH_SEPARATOR in surfaces:
        raise ManifestError("vietlish record contains '|'")
    if record.subset == IEV and SYLLABLE_SEPARATOR not in surfaces:
        raise ManifestError("iev record has no '$'")
    if not record.duration_s > 0:
        raise ManifestError("duration_s must be positive")


def validate_manifest(path, vocab=None):
    """
    Check every record of a manifest file.

    Returns
    -------
    list of str
        One message per problem, naming the line. Empty when valid.
    """
    vocab = vocab or load_default_inventory()
    try:
        records = read_manifest(path)
    except ManifestError as e:
        return [str(e)]

    problems = []
    seen = {}
    for lineno, record in enumerate(records, 1):
        if record.id in seen:
            problems.append("line {}: duplicate id {!r} (line {})".format(
                lineno, record.id, seen[record.id]))
        seen.setdefault(record.id, lineno)
        try:
            validate_record(record, vocab)
        except ManifestError as e:
            problems.append("line {}: {}: {}".format(lineno, record.id, e))
    return problems


def stats(manifest, by_split=None):
    """
    Sample counts and hours per subset.

    Parameters
    ----------
    manifest : str or list of CorpusRecord
        A manifest path or records.
    by_split : dict, optional
        ``split name -> list of CorpusRecord`` to tabulate instead; the
        result then has a (split, subset) index.

    Returns
    -------
    pd.DataFrame
        Columns ``samples`` and ``hours``, one row per subset and a
        ``total`` row.
    """
    if by_split is not None:
        return pd.concat(
            OrderedDict((name, stats(records))
                        for name, records in by_split.items()),
            names=['split', 'subset'],
        )

    records = read_manifest(manifest) if isinstance(manifest, str) \
        else list(manifest)
    samples = OrderedDict((s, 0) for s in SUBSETS)
    seconds = OrderedDict((s, 0.0) for s in SUBSETS)
    for record in records:
        samples[record.subset] = samples.get(record.subset, 0) + 1
        seconds[record.subset] = seconds.get(record.subset, 0.0) + \
            record.duration_s

    table = pd.DataFrame({
        'samples': pd.Series(samples, dtype=np.int64),
        'hours': pd.Series(seconds, dtype=np.float64) / SECONDS_PER_HOUR,
    }, columns=['samples', 'hours'])
    table.loc['total'] = [table['samples'].sum(), table['hours'].sum()]
    table['samples'] = table['samples'].astype(np.int64)
    table.index.name = 'subset'
    return table


def split_records(records, test_fraction=0.3, seed=0):
    """
    Stable train/test split by a seeded hash of the record id.

    Returns
    -------
    train, test : list of CorpusRecord
    """
    train, test = [], []
    for record in records:
        digest = hashlib.sha1(
            '{}:{}'.format(seed, record.id).encode('utf-8')).hexdigest()
        if int(digest[:8], 16) / 0xFFFFFFFF < test_fraction:
            test.append(record)
        else:
            train.append(record)
    return train, test
