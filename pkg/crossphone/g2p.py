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

import re
import unicodedata
from collections import namedtuple
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    CoverageError,
    InventoryError,
    IpaError,
    TableFormatError,
)
from .tokens import (
    ENGLISH_ONLY,
    ENGLISH_SEPARATOR,
    TONE,
    PhonemeSequence,
    load_default_inventory,
)
from .utils import data_path, read_table

PRIMARY_STRESS = 'ˈ'
SECONDARY_STRESS = 'ˌ'
SYLLABLE_BREAK = '.'

VOWEL = 'vowel'
CONSONANT = 'consonant'

SHARED_CLASS = 'shared'
ENGLISH_ONLY_CLASS = 'english_only'
STRESS_CLASS = 'stress'

_WORD_RE = re.compile(r'^[a-z][a-z-]*$')

PhoneTable = namedtuple('PhoneTable', 'phones classes')
IpaMap = namedtuple('IpaMap', 'targets classes stress_tone')


@dataclass(frozen=True)
class IpaSyllable:
    phones: tuple
    stressed: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'phones', tuple(self.phones))
        if not self.phones:
            raise IpaError("a syllable needs at least one phone")


@dataclass(frozen=True)
class IpaLexiconEntry:
    word: str
    ipa: str
    duration_hint: float = None


def load_phone_table(path=None):
    """
    Load the recognized IPA phones.

    Parameters
    ----------
    path : str, optional
        ``phone<TAB>class`` file, class being ``vowel`` or ``consonant``.
        Defaults to the bundled table.

    Returns
    -------
    PhoneTable
        ``phones`` is ordered longest first for tokenization.
    """
    if path is None:
        return _default_phone_table()
    return _load_phone_table(path)


@lru_cache(maxsize=None)
def _default_phone_table():
    return _load_phone_table(data_path('ipa_phones.tsv'))


def _load_phone_table(path):
    classes = {}
    for lineno, (phone, cls) in read_table(path, 2):
        if cls not in (VOWEL, CONSONANT):
            raise TableFormatError(
                path, lineno, "unknown phone class {!r}".format(cls))
        if phone in classes:
            raise TableFormatError(
                path, lineno, "duplicate phone {!r}".format(phone))
        classes[phone] = cls
    phones = tuple(sorted(classes, key=lambda p: (-len(p), p)))
    return PhoneTable(phones, classes)


def load_ipa_map(path=None, vocab=None):
    """
    Load the IPA to representative token mapping.

    Each record is ``ipa_phone<TAB>target_token<TAB>class``. A phone may
    appear once only. The single ``stress`` record names the tone token
    for the stressed syllable. The map is checked against ``vocab`` (the
    default inventory when omitted) once, here.

    Returns
    -------
    IpaMap

    Raises
    ------
    InventoryError
        A target is not a token of the right kind.
    """
    if path is None and vocab is None:
        return _default_ipa_map()
    ipa_map = _load_ipa_map(path or data_path('ipa_map.tsv'))
    validate_ipa_map(ipa_map, vocab or load_default_inventory())
    return ipa_map


@lru_cache(maxsize=None)
def _default_ipa_map():
    ipa_map = _load_ipa_map(data_path('ipa_map.tsv'))
    validate_ipa_map(ipa_map, load_default_inventory())
    return ipa_map


def _load_ipa_map(path):
    targets = {}
    classes = {}
    stress_tone = None
    for lineno, (phone, target, cls) in read_table(path, 3):
        if cls == STRESS_CLASS:
            if stress_tone is not None:
                raise TableFormatError(path, lineno, "second stress row")
            stress_tone = target
            continue
        if cls not in (SHARED_CLASS, ENGLISH_ONLY_CLASS):
            raise TableFormatError(
                path, lineno, "unknown mapping class {!r}".format(cls))
        if phone in targets:
            raise TableFormatError(
                path, lineno,
                "phone {!r} is mapped twice".format(phone))
        targets[phone] = target
        classes[phone] = cls
    if stress_tone is None:
        raise InventoryError("{}: no stress row".format(path))
    return IpaMap(targets, classes, stress_tone)


def validate_ipa_map(ipa_map, vocab):
    """
    Check every mapping target against the vocabulary.

    Shared phones must land on a Vietnamese category, English-only phones
    on an english_only token and the stress row on a tone.
    """
    for phone, target in sorted(ipa_map.targets.items()):
        token = vocab.token(target)
        if ipa_map.classes[phone] == SHARED_CLASS:
            ok = token.is_vietnamese_category and token.kind != TONE
        else:
            ok = token.kind == ENGLISH_ONLY
        if not ok:
            raise InventoryError(
                "{} phone {!r} maps to {} token {!r}".format(
                    ipa_map.classes[phone], phone, token.kind, target)
            )
    if vocab.token(ipa_map.stress_tone).kind != TONE:
        raise InventoryError(
            "stress maps to non-tone {!r}".format(ipa_map.stress_tone))


def parse_ipa(transcription, phones=None):
    """
    Split an IPA transcription into syllables.

    Parameters
    ----------
    transcription : str
        Standard English IPA, optionally between slashes. ``.`` separates
        syllables; ``ˈ`` and ``ˌ`` also start a new syllable, and ``ˈ``
        marks it stressed.
    phones : PhoneTable, optional

    Returns
    -------
    list of IpaSyllable

    Example
    -------
    >>> parse_ipa(u'ˈmes.ɪdʒ')
    [IpaSyllable(phones=('m', 'e', 's'), stressed=True),
     IpaSyllable(phones=('ɪ', 'dʒ'), stressed=False)]
    """
    table = phones or load_phone_table()
    text = unicodedata.normalize('NFC', transcription)
    base = 0
    if len(text) > 1 and text.startswith('/') and text.endswith('/'):
        text = text[1:-1]
        base = 1

    syllables = []
    current = []
    stressed = False
    seen_primary = False
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in (SYLLABLE_BREAK, PRIMARY_STRESS, SECONDARY_STRESS):
            if current:
                syllables.append(IpaSyllable(current, stressed))
                current = []
                stressed = False
            elif ch == SYLLABLE_BREAK or stressed:
                raise IpaError(
                    "empty syllable at offset {}".format(base + i),
                    offset=base + i)
            if ch == PRIMARY_STRESS:
                if seen_primary:
                    raise IpaError(
                        "second primary stress at offset {}".format(
                            base + i),
                        offset=base + i)
                seen_primary = True
                stressed = True
            i += 1
            continue

        for phone in table.phones:
            if text.startswith(phone, i):
                current.append(phone)
                i += len(phone)
                break
        else:
            raise IpaError(
                "unknown IPA symbol {!r} at offset {}".format(ch, base + i),
                offset=base + i)

    if current:
        syllables.append(IpaSyllable(current, stressed))
    elif stressed or (syllables and text.endswith(SYLLABLE_BREAK)):
        raise IpaError(
            "transcription ends without a syllable", offset=base + len(text))
    return syllables


def map_standard(syllables, vocab=None, ipa_map=None, phones=None):
    """
    Representative phoneme sequence of standard English syllables.

    Parameters
    ----------
    syllables : list of IpaSyllable
    vocab : PhonemeVocabulary, optional
    ipa_map : IpaMap, optional
        As returned by :func:`load_ipa_map`, which has already checked it.
    phones : PhoneTable, optional

    Returns
    -------
    PhonemeSequence
        Syllables joined by ``|``. The stressed syllable gets the stress
        tone right after its vowel.

    Example
    -------
    >>> str(map_standard(parse_ipa(u'ˈmes.ɪdʒ')))
    'm e -4 s | i dʒ'
    """
    vocab = vocab or load_default_inventory()
    ipa_map = ipa_map or load_ipa_map()
    table = phones or load_phone_table()

    surfaces = []
    for n, syllable in enumerate(syllables):
        if n:
            surfaces.append(ENGLISH_SEPARATOR)

        group = []
        for phone in syllable.phones:
            try:
                group.append(ipa_map.targets[phone])
            except KeyError:
                raise CoverageError(
                    "no mapping for IPA phone {!r}".format(phone), phone)

        if syllable.stressed:
            vowels = [i for i, phone in enumerate(syllable.phones)
                      if table.classes.get(phone) == VOWEL]
            if not vowels:
                raise IpaError(
                    "stressed syllable {!r} has no vowel".format(
                        ''.join(syllable.phones)))
            end = vowels[0]
            while end + 1 < len(syllable.phones) and \
                    table.classes.get(syllable.phones[end + 1]) == VOWEL:
                end += 1
            group.insert(end + 1, ipa_map.stress_tone)

        surfaces.extend(group)

    return PhonemeSequence([vocab.token(s) for s in surfaces])


def word_to_phonemes(ipa, vocab=None):
    """``map_standard(parse_ipa(ipa))``"""
    return map_standard(parse_ipa(ipa), vocab)


def load_lexicon(path=None, phones=None, check_ipa=True):
    """
    Load a pronunciation lexicon.

    Parameters
    ----------
    path : str, optional
        ``word<TAB>ipa[<TAB>duration_seconds]`` records. Defaults to the
        bundled 100-word lexicon.
    phones : PhoneTable, optional
    check_ipa : bool, optional
        Reject unparseable transcriptions here. Corpus builds turn this off
        and collect such words in their rejects report instead.

    Returns
    -------
    list of IpaLexiconEntry
        In file order.
    """
    path = path or data_path('lexicon.tsv')
    entries = []
    seen = set()
    for lineno, (word, ipa, duration) in read_table(path, 2, 3):
        if not _WORD_RE.match(word):
            raise TableFormatError(
                path, lineno,
                "{!r} is not a lowercase ASCII word".format(word))
        if word in seen:
            raise TableFormatError(
                path, lineno, "duplicate word {!r}".format(word))
        seen.add(word)
        if check_ipa:
            try:
                parse_ipa(ipa, phones)
            except IpaError as e:
                raise TableFormatError(path, lineno, str(e))
        if duration is not None:
            try:
                duration = float(duration)
            except ValueError:
                raise TableFormatError(
                    path, lineno, "bad duration {!r}".format(duration))
            if duration <= 0:
                raise TableFormatError(
                    path, lineno, "duration must be positive")
        entries.append(IpaLexiconEntry(word, ipa, duration))
    return entries
