# -*- coding: utf-8 -*-
#
# Configuration file for the Sphinx documentation builder.
#
# This file does only contain a selection of the most common options. For a
# full list see the documentation:
# http://www.sphinx-doc.org/en/master/config

import os
import sys
sys.path.insert(0, os.path.abspath('..'))

import crossphone  # noqa: E402


# -- General configuration ---------------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.githubpages',
              'sphinx.ext.napoleon']

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'crossphone'
copyright = '2024, crossphone developers'
author = 'crossphone developers'

version = crossphone.__version__
release = version

language = 'en'
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store', '**tests**']
pygments_style = 'sphinx'
todo_include_todos = False


# -- Options for HTML output -------------------------------------------------

html_theme = 'default'
html_static_path = ['_static']
htmlhelp_basename = 'crossphonedoc'


# -- Options for LaTeX output ------------------------------------------------

latex_elements = {}
latex_documents = [
    (master_doc, 'crossphone.tex', 'crossphone Documentation',
     'crossphone developers', 'manual'),
]


# -- Options for manual page output ------------------------------------------

man_pages = [
    (master_doc, 'crossphone', 'crossphone Documentation',
     [author], 1)
]


# -- Options for Texinfo output ----------------------------------------------

texinfo_documents = [
    (master_doc, 'crossphone', 'crossphone Documentation',
     author, 'crossphone', 'Shared Vietnamese-English phoneme toolkit.',
     'Miscellaneous'),
]
