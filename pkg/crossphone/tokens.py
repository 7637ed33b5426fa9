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

import io
import numbers
import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    InventoryError,
    StructureError,
    TableFormatError,
    TokenError,
)
from .utils import data_path, read_table

INITIAL = 'initial'
MEDIAL = 'medial'
NUCLEUS = 'nucleus'
ENDING = 'ending'
TONE = 'tone'
ENGLISH_ONLY = 'english_only'
SEPARATOR = 'separator'
CONTROL = 'control'

KINDS = (INITIAL, MEDIAL, NUCLEUS, ENDING, TONE, ENGLISH_ONLY, SEPARATOR,
         CONTROL)
VIETNAMESE_KINDS = frozenset([INITIAL, MEDIAL, NUCLEUS, ENDING, TONE])

VIETNAMESE = 'vietnamese'
ENGLISH = 'english'
SHARED = 'shared'

ORIGINS = (VIETNAMESE, ENGLISH, SHARED)

SYLLABLE_SEPARATOR = '$'
ENGLISH_SEPARATOR = '|'
SEPARATORS = frozenset([SYLLABLE_SEPARATOR, ENGLISH_SEPARATOR])

SOT = '<sot>'
EOT = '<eot>'
CONTROLS = frozenset([SOT, EOT])

VIETNAMESE_CATEGORY_COUNT = 53

_TONE_RE = re.compile(r'^-[1-6]$')

# letters of English vowel symbols; an english_only token made only of
# these is a vowel and may carry a tone
IPA_VOWEL_LETTERS = frozenset('aeiouæəɜɔɪʊ')


def tone_surface(tone):
    return '-{}'.format(tone)


@dataclass(frozen=True)
class PhonemeToken:
    """One unit of the representative phoneme vocabulary."""
    surface: str
    kind: str
    origin: str

    def __post_init__(self):
        if not self.surface or any(c.isspace() for c in self.surface):
            raise TokenError(
                "token surface must be non-empty without whitespace, "
                "got {!r}".format(self.surface)
            )
        if self.kind not in KINDS:
            raise TokenError("unknown token kind {!r}".format(self.kind))
        if self.origin not in ORIGINS:
            raise TokenError("unknown token origin {!r}".format(self.origin))

        if (self.kind == TONE) != bool(_TONE_RE.match(self.surface)):
            raise TokenError(
                "{!r}: tone tokens are exactly '-1' to '-6'".format(
                    self.surface)
            )
        if (self.kind == SEPARATOR) != (self.surface in SEPARATORS):
            raise TokenError(
                "{!r}: separators are exactly '$' and '|'".format(
                    self.surface)
            )
        if (self.kind == CONTROL) != (self.surface in CONTROLS):
            raise TokenError(
                "{!r}: control tokens are exactly '<sot>' and "
                "'<eot>'".format(self.surface)
            )

    @property
    def is_vowel(self):
        """Nuclei and English vowel symbols; the only tone hosts."""
        if self.kind == NUCLEUS:
            return True
        return self.kind == ENGLISH_ONLY and \
            all(c in IPA_VOWEL_LETTERS for c in self.surface)

    @property
    def is_vietnamese_category(self):
        return self.kind in VIETNAMESE_KINDS and self.origin != ENGLISH

    def __str__(self):
        return self.surface


class PhonemeVocabulary(object):
    """
    Ordered phoneme inventory with contiguous integer ids.

    Parameters
    ----------
    entries : iterable of PhonemeToken
        Tokens in id order.
    """

    def __init__(self, entries):
        self._entries = tuple(entries)
        self._index = {}
        for i, token in enumerate(self._entries):
            if token.surface in self._index:
                raise InventoryError(
                    "duplicate surface {!r}".format(token.surface)
                )
            self._index[token.surface] = i

        count = self.vietnamese_count
        if count != VIETNAMESE_CATEGORY_COUNT:
            raise InventoryError(
                "expected {} Vietnamese categories, found {}".format(
                    VIETNAMESE_CATEGORY_COUNT, count,
                )
            )

    @property
    def entries(self):
        return self._entries

    @property
    def index(self):
        return dict(self._index)

    @property
    def vietnamese_count(self):
        return sum(1 for t in self._entries if t.is_vietnamese_category)

    def kind_counts(self):
        return Counter(t.kind for t in self._entries)

    def __len__(self):
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)

    def __contains__(self, surface):
        return surface in self._index

    def __eq__(self, other):
        if not isinstance(other, PhonemeVocabulary):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self):
        return hash(self._entries)

    def token(self, surface):
        """Look up a token by surface, raising TokenError if unknown."""
        try:
            return self._entries[self._index[surface]]
        except KeyError:
            raise TokenError("unknown token {!r}".format(surface))

    def id_of(self, surface):
        try:
            return self._index[surface]
        except KeyError:
            raise TokenError("unknown token {!r}".format(surface))

    def surfaces(self, kind):
        return [t.surface for t in self._entries if t.kind == kind]

    @property
    def sot_id(self):
        return self.id_of(SOT)

    @property
    def eot_id(self):
        return self.id_of(EOT)


@dataclass(frozen=True)
class PhonemeSequence:
    """
    Ordered phoneme tokens.

    Separators are never leading, trailing or adjacent, and a tone token
    always directly follows a vowel: a nucleus or an English vowel.
    """
    tokens: tuple = ()

    def __post_init__(self):
        tokens = tuple(self.tokens)
        object.__setattr__(self, 'tokens', tokens)

        for i, token in enumerate(tokens):
            if token.kind == SEPARATOR:
                if i == 0 or i == len(tokens) - 1:
                    raise StructureError(
                        "separator {!r} at position {} cannot start or end "
                        "a sequence".format(token.surface, i)
                    )
                if tokens[i - 1].kind == SEPARATOR:
                    raise StructureError(
                        "adjacent separators at positions {} and {}".format(
                            i - 1, i)
                    )
            elif token.kind == TONE:
                if i == 0 or not tokens[i - 1].is_vowel:
                    raise StructureError(
                        "tone {!r} at position {} does not follow a "
                        "vowel".format(token.surface, i)
                    )

    def __len__(self):
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __getitem__(self, item):
        return self.tokens[item]

    @property
    def surfaces(self):
        return [t.surface for t in self.tokens]

    def groups(self):
        """Split into token groups at separators."""
        group = []
        for token in self.tokens:
            if token.kind == SEPARATOR:
                yield group
                group = []
            else:
                group.append(token)
        if group:
            yield group

    def __str__(self):
        return serialize(self)


def load_inventory(path):
    """
    Load a phoneme inventory file.

    Each record is ``surface<TAB>kind<TAB>origin``; ids follow file order.

    Parameters
    ----------
    path : str
        Inventory file.

    Returns
    -------
    PhonemeVocabulary
    """
    entries = []
    seen = {}
    for lineno, (surface, kind, origin) in read_table(path, 3):
        try:
            token = PhonemeToken(surface, kind, origin)
        except TokenError as e:
            raise TableFormatError(path, lineno, str(e))
        if surface in seen:
            raise InventoryError(
                "{}:{}: duplicate surface {!r} (first on line {})".format(
                    path, lineno, surface, seen[surface],
                )
            )
        seen[surface] = lineno
        entries.append(token)

    try:
        return PhonemeVocabulary(entries)
    except InventoryError as e:
        raise InventoryError("{}: {}".format(path, e))


@lru_cache(maxsize=None)
def load_default_inventory():
    """The inventory bundled with crossphone."""
    return load_inventory(data_path('inventory.tsv'))


def format_inventory(vocab):
    """Inventory file text for ``vocab``; loads back to the same ids."""
    return ''.join(
        '{}\t{}\t{}\n'.format(t.surface, t.kind, t.origin) for t in vocab
    )


def write_inventory(vocab, path):
    with io.open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(format_inventory(vocab))


def serialize(seq):
    """
    Space separated text form of a phoneme sequence.

    Parameters
    ----------
    seq : PhonemeSequence

    Returns
    -------
    str
    """
    return ' '.join(t.surface for t in seq.tokens)


def parse_sequence(text, vocab):
    """
    Parse the text form of a phoneme sequence.

    Parameters
    ----------
    text : str
        Whitespace separated token surfaces.
    vocab : PhonemeVocabulary

    Returns
    -------
    PhonemeSequence

    Note
    -----
    The empty string is the empty sequence.
    """
    tokens = []
    for position, surface in enumerate(text.split()):
        if surface not in vocab:
            raise TokenError(
                "unknown token {!r} at position {}".format(surface, position)
            )
        tokens.append(vocab.token(surface))
    return PhonemeSequence(tokens)


def sequence_from_surfaces(surfaces, vocab):
    return PhonemeSequence([vocab.token(s) for s in surfaces])


def to_ids(seq, vocab):
    return [vocab.id_of(t.surface) for t in seq.tokens]


def from_ids(ids, vocab):
    tokens = []
    size = len(vocab)
    for position, i in enumerate(ids):
        if isinstance(i, bool) or not isinstance(i, numbers.Integral) or \
           not 0 <= i < size:
            raise TokenError(
                "id {!r} at position {} is outside the vocabulary "
                "[0, {})".format(i, position, size)
            )
        tokens.append(vocab.entries[int(i)])
    return PhonemeSequence(tokens)
