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
"""Vietnamese syllable structure.

A syllable is an optional initial, a rhyme (optional medial glide, a
nucleus and an optional ending) and one of six tones. All spelling
knowledge lives in the tables under ``crossphone/data``.
"""
from __future__ import division

import os
import unicodedata
from collections import namedtuple
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .errors import (
    InventoryError,
    PhonotacticsError,
    StructureError,
    TableFormatError,
    TokenError,
    UnparseableError,
    with_word_index,
)
from .tokens import (
    SYLLABLE_SEPARATOR,
    PhonemeSequence,
    load_default_inventory,
    tone_surface,
)
from .utils import DATA_DIR, read_table

MEDIAL = 'w'
LEVEL_TONE = 1

VIETNAMESE_LETTERS = frozenset('aăâbcdđeêghiklmnoôơpqrstuưvxy')
VOWEL_LETTERS = frozenset('aăâeêioôơuưy')

# nuclei before which k, g and ng take their front spellings
FRONT_NUCLEI = frozenset(['i', 'e', 'ê', 'iê'])

GLIDE_ENDINGS = frozenset(['jz', 'wz'])

# gi absorbs the i of a following rhyme
GI = 'gi'

ONSETLESS = 'onsetless'
QU = 'qu'
PLAIN = 'plain'

InitialSpelling = namedtuple('InitialSpelling', 'plain front medial')
NucleusSpelling = namedtuple(
    'NucleusSpelling',
    'closed open medial_closed medial_open onsetless_closed onsetless_open '
    'glide',
)
EndingSpelling = namedtuple('EndingSpelling', 'plain alt alt_nuclei')

Orthography = namedtuple('Orthography', [
    'initials',
    'initial_spellings',
    'nuclei',
    'medials',
    'endings',
    'tone_names',
    'tone_marks',
    'checked_tones',
    'ending_nuclei',
    'needs_ending',
    'medial_after',
    'no_medial',
    'forbidden',
    'rhymes',
])


@dataclass(frozen=True)
class Syllable:
    """
    A Vietnamese syllable.

    Parameters
    ----------
    initial : str, optional
        Initial consonant token.
    medial : str, optional
        The medial glide token ``'w'``.
    nucleus : str
        Nucleus token.
    ending : str, optional
        Ending token.
    tone : int
        Tone number, 1 to 6. See :func:`tone_name`.
    """
    initial: str = None
    medial: str = None
    nucleus: str = None
    ending: str = None
    tone: int = LEVEL_TONE

    def __post_init__(self):
        if not self.nucleus:
            raise StructureError("a syllable needs a nucleus")
        if self.tone not in range(1, 7):
            raise StructureError(
                "tone must be between 1 and 6, got {!r}".format(self.tone)
            )


def _dash(field):
    return None if field in (None, '-') else field


def _split_list(field):
    return frozenset(f.strip() for f in field.split(',') if f.strip())


def load_orthography(directory=None):
    """
    Load the spelling and legality tables.

    Parameters
    ----------
    directory : str, optional
        Directory holding ``initials.tsv``, ``nuclei.tsv``, ``medials.tsv``,
        ``endings.tsv``, ``tones.tsv`` and ``phonotactics.tsv``. Defaults to
        the bundled tables.

    Returns
    -------
    Orthography
    """
    if directory is None:
        return _default_orthography()
    return _load_orthography(directory)


@lru_cache(maxsize=None)
def _default_orthography():
    return _load_orthography(DATA_DIR)


def _load_orthography(directory):
    def path(name):
        return os.path.join(directory, name)

    initials = {}
    for _, (token, plain, front, medial) in read_table(
            path('initials.tsv'), 2, 4):
        initials[token] = InitialSpelling(
            plain, _dash(front) or plain, _dash(medial))

    initial_spellings = []
    for token, spelling in initials.items():
        initial_spellings.append((spelling.plain, token))
        if spelling.front != spelling.plain:
            initial_spellings.append((spelling.front, token))
        if spelling.medial:
            initial_spellings.append((spelling.medial, token))
    initial_spellings.sort(key=lambda item: (-len(item[0]), item[0]))

    nuclei = {}
    for _, fields in read_table(path('nuclei.tsv'), 8):
        nuclei[fields[0]] = NucleusSpelling(*[_dash(f) for f in fields[1:]])

    medials = {}
    for _, (nucleus, letter) in read_table(path('medials.tsv'), 2):
        medials[nucleus] = letter

    endings = {}
    for lineno, (token, plain, alt, alt_nuclei) in read_table(
            path('endings.tsv'), 2, 4):
        if bool(alt) != bool(alt_nuclei):
            raise TableFormatError(
                path('endings.tsv'), lineno,
                "an alternative spelling needs the nuclei that take it",
            )
        endings[token] = EndingSpelling(
            plain, alt, _split_list(alt_nuclei) if alt_nuclei else
            frozenset())

    tone_names = {}
    tone_marks = {}
    for lineno, (tone, name, mark) in read_table(path('tones.tsv'), 3):
        try:
            tone = int(tone)
            tone_names[tone] = name
            if mark != '-':
                tone_marks[tone] = chr(int(mark.replace('U+', ''), 16))
        except ValueError:
            raise TableFormatError(
                path('tones.tsv'), lineno, "bad tone or mark")

    checked_tones = {}
    ending_nuclei = {}
    needs_ending = set()
    medial_after = {}
    no_medial = set()
    forbidden = []
    rules_path = path('phonotactics.tsv')
    for lineno, (rule, a, b, c) in read_table(rules_path, 2, 4):
        if rule == 'tones' and b:
            checked_tones[a] = frozenset(int(t) for t in _split_list(b))
        elif rule == 'ending' and b:
            ending_nuclei[a] = _split_list(b)
        elif rule == 'needs_ending':
            needs_ending.add(a)
        elif rule == 'medial_after' and b:
            for nucleus in _split_list(b):
                medial_after.setdefault(nucleus, set()).add(a)
        elif rule == 'no_medial':
            no_medial.update(_split_list(a))
        elif rule == 'forbid' and b:
            forbidden.append((a, b, c))
        else:
            raise TableFormatError(
                rules_path, lineno, "unknown rule {!r}".format(rule))

    orth = Orthography(
        initials=initials,
        initial_spellings=tuple(initial_spellings),
        nuclei=nuclei,
        medials=medials,
        endings=endings,
        tone_names=tone_names,
        tone_marks=tone_marks,
        checked_tones=checked_tones,
        ending_nuclei=ending_nuclei,
        needs_ending=frozenset(needs_ending),
        medial_after={k: frozenset(v) for k, v in medial_after.items()},
        no_medial=frozenset(no_medial),
        forbidden=tuple(forbidden),
        rhymes={},
    )
    orth.rhymes.update(_build_rhyme_maps(orth))
    return orth


def _context(initial, medial, orth):
    if initial is None:
        return ONSETLESS
    if medial and orth.initials[initial].medial:
        return QU
    return PLAIN


def _rhyme_legal(orth, medial, nucleus, ending, context):
    if ending is None and nucleus in orth.needs_ending:
        return False
    if ending in orth.ending_nuclei and \
       nucleus not in orth.ending_nuclei[ending]:
        return False
    if medial:
        if nucleus not in orth.medials:
            return False
        if nucleus in orth.medial_after and context != QU:
            return False
    return True


def _ending_spelling(orth, ending, nucleus):
    spelling = orth.endings[ending]
    if spelling.alt and nucleus in spelling.alt_nuclei:
        return spelling.alt
    return spelling.plain


def _render_rhyme(orth, medial, nucleus, ending, context):
    """Rhyme text and the index of the letter taking the tone mark."""
    row = orth.nuclei[nucleus]
    closed = ending is not None
    if medial:
        form = row.medial_closed if closed else row.medial_open
    elif context == ONSETLESS:
        form = row.onsetless_closed if closed else row.onsetless_open
    else:
        form = row.closed if closed else row.open
    if form is None:
        return None, None

    if ending in GLIDE_ENDINGS and row.glide:
        form = row.glide

    prefix = ''
    if medial and context != QU:
        prefix = orth.medials[nucleus]

    # diphthongs carry the mark on their second letter when closed
    mark = len(prefix) + (1 if closed and len(form) == 2 else 0)

    text = prefix + form
    if closed:
        text += _ending_spelling(orth, ending, nucleus)
    return text, mark


def _build_rhyme_maps(orth):
    maps = {}
    endings = [None] + sorted(orth.endings)
    for context in (ONSETLESS, PLAIN, QU):
        rhymes = {}
        medials = (MEDIAL,) if context == QU else (None, MEDIAL)
        for medial, nucleus, ending in product(
                medials, sorted(orth.nuclei), endings):
            if not _rhyme_legal(orth, medial, nucleus, ending, context):
                continue
            text, _ = _render_rhyme(orth, medial, nucleus, ending, context)
            if text is None:
                continue
            key = (medial, nucleus, ending)
            if rhymes.get(text, key) != key:
                raise InventoryError(
                    "rhyme spelling {!r} is ambiguous: {} and {}".format(
                        text, rhymes[text], key)
                )
            rhymes[text] = key

        # open i is written either i or y
        for text, alias in (('i', 'y'), ('y', 'i')):
            if text in rhymes and alias not in rhymes:
                rhymes[alias] = rhymes[text]
        maps[context] = rhymes
    return maps


def _initial_spelling(orth, initial, medial, nucleus):
    spelling = orth.initials[initial]
    if medial and spelling.medial:
        return spelling.medial
    if medial is None and nucleus in FRONT_NUCLEI:
        return spelling.front
    return spelling.plain


def tone_name(tone, orth=None):
    """Name of a tone number, e.g. ``tone_name(4) == 'sắc'``."""
    orth = orth or load_orthography()
    return orth.tone_names[tone]


def normalize(text):
    """NFC, lowercase, single spaces."""
    text = unicodedata.normalize('NFC', text).lower()
    return ' '.join(text.split())


def _split_tone(word, orth):
    mark_tones = {mark: tone for tone, mark in orth.tone_marks.items()}
    tone = LEVEL_TONE
    kept = []
    for ch in unicodedata.normalize('NFD', word):
        if ch in mark_tones:
            if tone != LEVEL_TONE:
                raise UnparseableError(
                    "{!r} carries more than one tone mark".format(word))
            tone = mark_tones[ch]
        else:
            kept.append(ch)

    base = unicodedata.normalize('NFC', ''.join(kept))
    for ch in base:
        if ch not in VIETNAMESE_LETTERS:
            raise UnparseableError(
                "{!r}: non-Vietnamese grapheme {!r}".format(word, ch))
    return base, tone


def _match_initial(base, orth):
    for spelling, token in orth.initial_spellings:
        if base.startswith(spelling):
            return spelling, token
    return '', None


def parse_syllable(orthographic, orth=None):
    """
    Decompose one written Vietnamese syllable.

    Parameters
    ----------
    orthographic : str
        A single word. It is normalized first.
    orth : Orthography, optional
        Spelling tables. Defaults to the bundled tables.

    Returns
    -------
    Syllable

    Note
    -----
    Initials are matched greedily, longest spelling first, and must use the
    spelling their context calls for (``ca``, ``ke``, ``qua``, ``ghi``,
    ``nghe``). The tone mark may sit on any vowel letter.
    """
    orth = orth or load_orthography()
    word = normalize(orthographic)
    if not word or ' ' in word:
        raise UnparseableError(
            "expected a single word, got {!r}".format(orthographic))

    base, tone = _split_tone(word, orth)
    spelling, initial = _match_initial(base, orth)
    rest = base[len(spelling):]

    if initial is None:
        context = ONSETLESS
    elif spelling == orth.initials[initial].medial:
        context = QU
    else:
        context = PLAIN

    if spelling == GI and (not rest or rest[0] not in VOWEL_LETTERS
                           or rest[0] == 'ê'):
        rest = 'i' + rest

    if not any(ch in VOWEL_LETTERS for ch in rest):
        raise UnparseableError("{!r} has no vowel".format(word))

    try:
        medial, nucleus, ending = orth.rhymes[context][rest]
    except KeyError:
        raise UnparseableError(
            "{!r}: {!r} is not a Vietnamese rhyme".format(word, rest))
    if context == QU:
        medial = MEDIAL

    if initial is not None:
        expected = _initial_spelling(orth, initial, medial, nucleus)
        if spelling != expected:
            raise UnparseableError(
                "{!r}: the initial is written {!r} here, not {!r}".format(
                    word, expected, spelling)
            )

    syllable = Syllable(initial, medial, nucleus, ending, tone)
    check_syllable(syllable, orth)
    return syllable


def check_syllable(syllable, orth=None):
    """
    Raise if ``syllable`` is not a legal Vietnamese syllable.

    Raises
    ------
    TokenError
        A part is not a Vietnamese category of its kind.
    PhonotacticsError
        The parts do not combine.
    """
    orth = orth or load_orthography()
    s = syllable

    if s.initial is not None and s.initial not in orth.initials:
        raise TokenError("{!r} is not an initial".format(s.initial))
    if s.medial not in (None, MEDIAL):
        raise TokenError("{!r} is not the medial".format(s.medial))
    if s.nucleus not in orth.nuclei:
        raise TokenError("{!r} is not a nucleus".format(s.nucleus))
    if s.ending is not None and s.ending not in orth.endings:
        raise TokenError("{!r} is not an ending".format(s.ending))
    if s.tone not in orth.tone_names:
        raise TokenError("{!r} is not a tone".format(s.tone))

    context = _context(s.initial, s.medial, orth)
    if not _rhyme_legal(orth, s.medial, s.nucleus, s.ending, context) or \
       _render_rhyme(orth, s.medial, s.nucleus, s.ending, context)[0] is None:
        raise PhonotacticsError(
            "{} is not a legal rhyme".format(_describe(s)))

    if s.medial:
        if s.initial in orth.no_medial:
            raise PhonotacticsError(
                "{} takes no medial after {!r}".format(
                    _describe(s), s.initial))
        allowed = orth.medial_after.get(s.nucleus)
        if allowed is not None and s.initial not in allowed:
            raise PhonotacticsError(
                "{}: medial before {!r} only after {}".format(
                    _describe(s), s.nucleus, ', '.join(sorted(allowed))))

    for initial, nucleus, ending in orth.forbidden:
        if s.initial == initial and s.nucleus == nucleus and (
                ending is None or
                (ending == '-' and s.ending is None) or
                ending == s.ending):
            raise PhonotacticsError(
                "{} is not a legal syllable".format(_describe(s)))

    tones = orth.checked_tones.get(s.ending)
    if tones is not None and s.tone not in tones:
        raise PhonotacticsError(
            "{}: ending {!r} takes tone {}, not {}".format(
                _describe(s), s.ending,
                ' or '.join(str(t) for t in sorted(tones)), s.tone)
        )


def is_legal(syllable, orth=None):
    try:
        check_syllable(syllable, orth)
    except (PhonotacticsError, TokenError):
        return False
    return True


def _describe(s):
    parts = [p for p in (s.initial, s.medial, s.nucleus, s.ending) if p]
    return '/{}/{}'.format(' '.join(parts), s.tone)


def render_syllable(syllable, orth=None):
    """
    Write a syllable in Vietnamese orthography.

    The tone mark goes on the nucleus letter; iê, uô and ươ carry it on
    their second letter when an ending follows and on the first otherwise.

    Parameters
    ----------
    syllable : Syllable
    orth : Orthography, optional

    Returns
    -------
    str
        NFC text. ``parse_syllable`` of the result gives ``syllable`` back.
    """
    orth = orth or load_orthography()
    s = syllable
    context = _context(s.initial, s.medial, orth)
    rhyme, mark = _render_rhyme(orth, s.medial, s.nucleus, s.ending, context)
    if rhyme is None:
        raise PhonotacticsError(
            "{} cannot be written".format(_describe(s)))

    initial = ''
    if s.initial is not None:
        initial = _initial_spelling(orth, s.initial, s.medial, s.nucleus)
        if initial == GI and rhyme.startswith('i'):
            rhyme = rhyme[1:]
            mark -= 1

    chars = list(initial + rhyme)
    if s.tone in orth.tone_marks:
        pos = len(initial) + mark
        chars[pos] = unicodedata.normalize(
            'NFC', chars[pos] + orth.tone_marks[s.tone])
    return ''.join(chars)


def enumerate_syllables(orth=None):
    """
    Every legal syllable of the tables, in a fixed order.

    Yields
    ------
    Syllable
    """
    orth = orth or load_orthography()
    initials = [None] + sorted(orth.initials)
    endings = [None] + sorted(orth.endings)
    for initial, medial, nucleus, ending, tone in product(
            initials, (None, MEDIAL), sorted(orth.nuclei), endings,
            sorted(orth.tone_names)):
        s = Syllable(initial, medial, nucleus, ending, tone)
        if is_legal(s, orth):
            yield s


def syllable_tokens(syllable):
    """
    Token surfaces of one syllable: initial, medial, nucleus, tone, ending.

    The level tone has no token.
    """
    s = syllable
    surfaces = [p for p in (s.initial, s.medial, s.nucleus) if p]
    if s.tone != LEVEL_TONE:
        surfaces.append(tone_surface(s.tone))
    if s.ending:
        surfaces.append(s.ending)
    return surfaces


def syllables_to_phonemes(syllables, vocab=None):
    """Token groups of ``syllables`` joined by ``$``."""
    vocab = vocab or load_default_inventory()
    surfaces = []
    for i, s in enumerate(syllables):
        if i:
            surfaces.append(SYLLABLE_SEPARATOR)
        surfaces.extend(syllable_tokens(s))
    return PhonemeSequence([vocab.token(x) for x in surfaces])


def parse_text(sentence, orth=None):
    """Parse every word of ``sentence``; errors name the word index."""
    syllables = []
    for i, word in enumerate(normalize(sentence).split()):
        try:
            syllables.append(parse_syllable(word, orth))
        except (UnparseableError, PhonotacticsError) as e:
            raise with_word_index(e, i, word)
    return syllables


def text_to_phonemes(sentence, vocab=None, orth=None):
    """
    Phoneme sequence of a Vietnamese sentence.

    Parameters
    ----------
    sentence : str
        Whitespace separated syllables.
    vocab : PhonemeVocabulary, optional
        Defaults to the bundled inventory.
    orth : Orthography, optional

    Returns
    -------
    PhonemeSequence
        One token group per syllable, groups joined by ``$``.

    Example
    -------
    >>> str(text_to_phonemes(u'in bóc'))
    'i nz $ b o -4 kz'
    """
    return syllables_to_phonemes(parse_text(sentence, orth), vocab)
