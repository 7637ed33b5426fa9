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
"""Localization of English words into Vietnamese syllables ("Vietlish")."""
from __future__ import division

import logging
from collections import OrderedDict, namedtuple
from functools import lru_cache

from .errors import (
    CrossphoneError,
    LocalizationError,
    PhonotacticsError,
    TableFormatError,
    TokenError,
)
from .g2p import VOWEL, load_phone_table
from .syllables import (
    LEVEL_TONE,
    MEDIAL,
    Syllable,
    check_syllable,
    load_orthography,
    parse_text,
    render_syllable,
    syllables_to_phonemes,
)
from .tokens import load_default_inventory, parse_sequence
from .utils import data_path, read_table

log = logging.getLogger(__name__)

# tone given to syllables closed by a stop
CHECKED_TONE = 4

# nucleus of the syllables inserted to break up onset clusters
EPENTHETIC_NUCLEUS = 'ơ'

# a glide that follows a consonant in an onset cluster is dropped
DROPPED_ONSET_GLIDE = 'j'

_DROP = '-'

ProjectionTable = namedtuple('ProjectionTable', [
    'onset',
    'nucleus',
    'coda',
    'drop_final',
    'stops',
    'substitutes',
    'fallbacks',
])

OverrideEntry = namedtuple('OverrideEntry', 'text phonemes')


def _split_list(field):
    return tuple(f.strip() for f in field.split(',') if f.strip())


def load_projection(path=None):
    """
    Load the IPA to Vietnamese projection table.

    Parameters
    ----------
    path : str, optional
        Defaults to the bundled ``projection.tsv``.

    Returns
    -------
    ProjectionTable
    """
    if path is None:
        return _default_projection()
    return _load_projection(path)


@lru_cache(maxsize=None)
def _default_projection():
    return _load_projection(data_path('projection.tsv'))


def _load_projection(path):
    onset = {}
    nucleus = {}
    coda = {}
    drop_final = ()
    stops = ()
    substitutes = {}
    fallbacks = {}
    for lineno, (position, key, target, glide) in read_table(path, 3, 4):
        if position == 'onset':
            onset[key] = target
        elif position == 'nucleus':
            nucleus[key] = (target, glide)
        elif position == 'coda':
            coda[key] = None if target == _DROP else target
        elif position == 'cluster' and key == 'drop_final':
            drop_final = _split_list(target)
        elif position == 'cluster' and key == 'stops':
            stops = _split_list(target)
        elif position == 'substitute':
            substitutes[key] = _split_list(target)
        elif position == 'fallback':
            fallbacks[key] = target
        else:
            raise TableFormatError(
                path, lineno, "unknown position {!r}".format(position))
    return ProjectionTable(onset, nucleus, coda, frozenset(drop_final),
                           frozenset(stops), substitutes, fallbacks)


def load_overrides(path=None, vocab=None):
    """
    Load the override lexicon.

    Records are ``english_word<TAB>vietnamese_text[<TAB>phonemes]``. The
    Vietnamese text must parse; the optional phoneme column is returned
    verbatim by :func:`localize_to_phonemes`.

    Returns
    -------
    OrderedDict
        word -> OverrideEntry
    """
    path = path or data_path('vietlish_overrides.tsv')
    vocab = vocab or load_default_inventory()
    overrides = OrderedDict()
    for lineno, (word, text, phonemes) in read_table(path, 2, 3):
        try:
            parse_text(text)
            if phonemes is not None:
                parse_sequence(phonemes, vocab)
        except CrossphoneError as e:
            raise TableFormatError(path, lineno, str(e))
        overrides[word] = OverrideEntry(text, phonemes)
    return overrides


@lru_cache(maxsize=None)
def _default_overrides():
    return load_overrides()


def _lookup(table, phone, position):
    try:
        return table[phone]
    except KeyError:
        raise LocalizationError(
            "no {} projection for /{}/".format(position, phone))


def _reduce_coda(coda, table):
    coda = list(coda)
    while len(coda) > 1 and coda[-1] in table.drop_final:
        coda.pop()
    if len(coda) > 1:
        stops = [c for c in coda if c in table.stops]
        coda = [stops[-1]] if stops else [coda[0]]
    if not coda:
        return None
    return _lookup(table.coda, coda[0], 'coda')


def _fit_ending(nucleus, ending, table, orth):
    def fits(e):
        allowed = orth.ending_nuclei.get(e)
        return allowed is None or nucleus in allowed

    if ending is None or fits(ending):
        return ending
    for substitute in table.substitutes.get(ending, ()):
        if fits(substitute):
            return substitute
    return None


def _with_tone(initial, medial, nucleus, ending, orth):
    tone = CHECKED_TONE if ending in orth.checked_tones else LEVEL_TONE
    return Syllable(initial, medial, nucleus, ending, tone)


def _repair(initial, medial, nucleus, ending, table, orth):
    ending = _fit_ending(nucleus, ending, table, orth)
    fallback = table.fallbacks.get(nucleus, nucleus)
    candidates = [
        (medial, nucleus, ending),
        (None, nucleus, ending),
        (medial, nucleus, None),
        (None, nucleus, None),
        (None, fallback, _fit_ending(fallback, ending, table, orth)),
        (None, fallback, None),
    ]
    for m, n, e in candidates:
        s = _with_tone(initial, m, n, e, orth)
        try:
            check_syllable(s, orth)
        except (PhonotacticsError, TokenError):
            continue
        return s

    s = _with_tone(initial, medial, nucleus, ending, orth)
    raise LocalizationError(
        "no legal Vietnamese syllable for {}".format(s), syllable=s)


def _project(ipa_syllable, table, phones, orth):
    seq = list(ipa_syllable.phones)
    vowels = [i for i, p in enumerate(seq) if phones.classes.get(p) == VOWEL]

    out = []

    def epenthetic(phone):
        initial, medial = _lookup(table.onset, phone, 'onset'), None
        if initial == MEDIAL:
            initial, medial = None, MEDIAL
        return _repair(initial, medial, EPENTHETIC_NUCLEUS, None, table,
                       orth)

    if not vowels:
        return [epenthetic(p) for p in seq]

    start = end = vowels[0]
    while end + 1 < len(seq) and phones.classes.get(seq[end + 1]) == VOWEL:
        end += 1
    onset, coda = seq[:start], seq[end + 1:]
    if end > start:
        log.debug("dropping extra vowels %s", seq[start + 1:end + 1])

    medial = None
    if len(onset) > 1 and onset[-1] == DROPPED_ONSET_GLIDE:
        onset = onset[:-1]
    if len(onset) > 1 and _lookup(table.onset, onset[-1], 'onset') == MEDIAL:
        medial = MEDIAL
        onset = onset[:-1]

    for phone in onset[:-1]:
        out.append(epenthetic(phone))

    initial = None
    if onset:
        initial = _lookup(table.onset, onset[-1], 'onset')
        if initial == MEDIAL:
            initial, medial = None, MEDIAL

    nucleus, glide = _lookup(table.nucleus, seq[start], 'nucleus')
    ending = _reduce_coda(coda, table)
    if ending is None:
        ending = glide

    out.append(_repair(initial, medial, nucleus, ending, table, orth))
    return out


def localize(word, ipa, lexicon_override=None, projection=None, phones=None,
             orth=None):
    """
    Vietnamese syllables for an English word.

    Parameters
    ----------
    word : str
        The English word, used for the override lookup.
    ipa : list of IpaSyllable
        Its standard pronunciation.
    lexicon_override : dict, optional
        word -> OverrideEntry. Defaults to the bundled override lexicon;
        pass an empty dict to use the projection rules only.
    projection : ProjectionTable, optional
    phones : PhoneTable, optional
    orth : Orthography, optional

    Returns
    -------
    list of Syllable

    Note
    -----
    The rules map onset, nucleus and coda through the projection table,
    break onset clusters with an inserted ``ơ`` syllable, reduce coda
    clusters to one consonant (trailing /s z/ first, then the last stop),
    give stop-closed syllables the checked tone and the level tone
    otherwise, and finally check every syllable.
    """
    if lexicon_override is None:
        lexicon_override = _default_overrides()
    if word in lexicon_override:
        return parse_text(lexicon_override[word].text, orth)

    table = projection or load_projection()
    phones = phones or load_phone_table()
    orth = orth or load_orthography()

    syllables = []
    for ipa_syllable in ipa:
        syllables.extend(_project(ipa_syllable, table, phones, orth))
    return syllables


def localized_text(syllables, orth=None):
    return ' '.join(render_syllable(s, orth) for s in syllables)


def localize_to_phonemes(word, ipa, vocab=None, lexicon_override=None):
    """
    Phoneme sequence of the localized word, syllables joined by ``$``.

    An override entry with a phoneme column is returned as written.
    """
    vocab = vocab or load_default_inventory()
    if lexicon_override is None:
        lexicon_override = _default_overrides()
    entry = lexicon_override.get(word)
    if entry is not None and entry.phonemes is not None:
        return parse_sequence(entry.phonemes, vocab)
    return syllables_to_phonemes(
        localize(word, ipa, lexicon_override), vocab)
