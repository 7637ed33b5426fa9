#!/usr/bin/env python
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
import re
from os import path

from setuptools import setup


DISTNAME = "crossphone"
DESCRIPTION = """crossphone is a Python library for a shared \
Vietnamese-English phoneme representation"""
LONG_DESCRIPTION = """crossphone converts Vietnamese text and English
pronunciations into one phoneme token inventory, localizes English words
into Vietnamese syllables, scores phoneme error rates, builds synthetic
code-switching corpus manifests and runs a small forward-only
attention encoder-decoder over log mel features.
"""
MAINTAINER = "crossphone developers"
MAINTAINER_EMAIL = "crossphone@users.noreply.github.com"
AUTHOR = "crossphone developers"
AUTHOR_EMAIL = "crossphone@users.noreply.github.com"
URL = "https://github.com/crossphone/crossphone"
LICENSE = "Apache License, Version 2.0"

classifiers = [
    "Development Status :: 3 - Alpha",
    "Programming Language :: Python",
    "Programming Language :: Python :: 3",
    "Programming Language :: Python :: 3.8",
    "Programming Language :: Python :: 3.9",
    "Programming Language :: Python :: 3.10",
    "Programming Language :: Python :: 3.11",
    "License :: OSI Approved :: Apache Software License",
    "Intended Audience :: Science/Research",
    "Topic :: Scientific/Engineering",
    "Topic :: Multimedia :: Sound/Audio :: Speech",
    "Topic :: Text Processing :: Linguistic",
    "Operating System :: OS Independent"
]


test_reqs = [
    "parameterized>=0.6.1"
]


requirements = [
    'numpy>=1.17',
    'pandas>=1.0',
    'scipy>=1.4',
    'librosa>=0.8',
]

extras_requirements = {
    "dev": [
        "parameterized>=0.6.1",
        "flake8>=3.7"
    ]
}


def read_version():
    init = path.join(path.dirname(path.abspath(__file__)),
                     'crossphone', '__init__.py')
    with open(init) as f:
        return re.search(r"^__version__ = '([^']+)'", f.read(), re.M).group(1)


if __name__ == "__main__":
    setup(
        name=DISTNAME,
        version=read_version(),
        maintainer=MAINTAINER,
        maintainer_email=MAINTAINER_EMAIL,
        description=DESCRIPTION,
        license=LICENSE,
        url=URL,
        long_description=LONG_DESCRIPTION,
        packages=["crossphone", "crossphone.tests"],
        package_data={"crossphone": ["data/*.tsv", "data/*.txt"]},
        classifiers=classifiers,
        python_requires=">=3.8",
        install_requires=requirements,
        extras_require=extras_requirements,
        tests_require=test_reqs,
        test_suite="crossphone.tests",
        entry_points={
            "console_scripts": ["crossphone=crossphone.cli:main"],
        },
    )
