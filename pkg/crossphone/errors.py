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
"""Exception types raised by crossphone.

Every error is a ``ValueError`` and carries a stable ``code`` that the
command line prints as a prefix (``E-PARSE: ...``).
"""


class CrossphoneError(ValueError):
    code = 'E-CROSSPHONE'


class TableFormatError(CrossphoneError):
    """A data file line could not be read.

    Parameters
    ----------
    path : str
        The file being read.
    lineno : int
        1-based line number of the offending line.
    message : str
        What is wrong with the line.
    """
    code = 'E-PARSE'

    def __init__(self, path, lineno, message):
        self.path = path
        self.lineno = lineno
        super(TableFormatError, self).__init__(
            "{path}:{lineno}: {message}".format(
                path=path, lineno=lineno, message=message,
            )
        )


class InventoryError(CrossphoneError):
    code = 'E-INVENTORY'


class TokenError(CrossphoneError):
    code = 'E-TOKEN'


class StructureError(CrossphoneError):
    code = 'E-STRUCTURE'


class UnparseableError(CrossphoneError):
    code = 'E-PARSE'


class PhonotacticsError(CrossphoneError):
    code = 'E-PHONOTACTICS'


class IpaError(CrossphoneError):
    code = 'E-IPA'

    def __init__(self, message, offset=None):
        self.offset = offset
        super(IpaError, self).__init__(message)


class CoverageError(CrossphoneError):
    code = 'E-COVERAGE'

    def __init__(self, message, phone=None):
        self.phone = phone
        super(CoverageError, self).__init__(message)


class LocalizationError(CrossphoneError):
    code = 'E-LOCALIZATION'

    def __init__(self, message, syllable=None):
        self.syllable = syllable
        super(LocalizationError, self).__init__(message)


class PerError(CrossphoneError):
    code = 'E-PER'

    def __init__(self, message, utterance_id=None):
        self.utterance_id = utterance_id
        super(PerError, self).__init__(message)


class ManifestError(CrossphoneError):
    code = 'E-MANIFEST'

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = "line {}: {}".format(lineno, message)
        super(ManifestError, self).__init__(message)


class TemplateError(CrossphoneError):
    code = 'E-TEMPLATE'


class CorpusBuildError(CrossphoneError):
    code = 'E-BUILD'


class ShapeError(CrossphoneError):
    code = 'E-SHAPE'

    def __init__(self, layer, message):
        self.layer = layer
        super(ShapeError, self).__init__(
            "{}: {}".format(layer, message)
        )


class ConfigError(CrossphoneError):
    code = 'E-CONFIG'


class NumericError(CrossphoneError):
    code = 'E-NUMERIC'


def with_word_index(error, index, word):
    """Return a copy of a syllable error that names the word it came from.
    """
    new = type(error).__new__(type(error))
    new.__dict__.update(error.__dict__)
    new.args = ("word {} ({!r}): {}".format(index, word, error),)
    new.word_index = index
    return new
