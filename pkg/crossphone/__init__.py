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
# flake8: noqa

__version__ = '0.1.0'

from .errors import (
    ConfigError,
    CorpusBuildError,
    CoverageError,
    CrossphoneError,
    InventoryError,
    IpaError,
    LocalizationError,
    ManifestError,
    NumericError,
    PerError,
    PhonotacticsError,
    ShapeError,
    StructureError,
    TableFormatError,
    TemplateError,
    TokenError,
    UnparseableError,
)

from .tokens import (
    PhonemeSequence,
    PhonemeToken,
    PhonemeVocabulary,
    from_ids,
    load_default_inventory,
    load_inventory,
    parse_sequence,
    serialize,
    to_ids,
)

from .syllables import (
    Syllable,
    check_syllable,
    enumerate_syllables,
    is_legal,
    parse_syllable,
    parse_text,
    render_syllable,
    syllables_to_phonemes,
    text_to_phonemes,
    tone_name,
)

from .g2p import (
    IpaLexiconEntry,
    IpaSyllable,
    load_ipa_map,
    load_lexicon,
    map_standard,
    parse_ipa,
    word_to_phonemes,
)

from .vietlish import (
    load_overrides,
    localize,
    localize_to_phonemes,
    localized_text,
)

from .per import (
    AlignmentResult,
    align,
    corpus_per,
    per,
)

from .corpus import (
    CarrierTemplate,
    CorpusRecord,
    build_en_native,
    build_iev,
    build_vietlish,
    load_templates,
    read_manifest,
    split_records,
    stats,
    validate_manifest,
    write_manifest,
)

from .features import log_mel

from .aed import (
    ModelConfig,
    attention,
    decoder_step,
    encoder_forward,
    finite_diff_check,
    greedy_decode,
    init_weights,
    load_weights,
    positional_encoding,
    save_weights,
)

from .periods import (
    SAMPLE_RATE,
    SHIFT_10MS,
    SHIFT_20MS,
)
