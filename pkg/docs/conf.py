#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# flippergame documentation build configuration file.
#

from flippergame import __version__

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.doctest',
    'sphinx.ext.viewcode',
    'sphinx.ext.napoleon'
]

source_suffix = '.rst'
master_doc = 'index'

project = 'flippergame'
copyright = '2026, the flippergame developers'
author = 'The flippergame developers'

version = __version__
release = version

exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']
pygments_style = 'sphinx'

html_theme = 'alabaster'
htmlhelp_basename = 'flippergamedoc'

autodoc_member_order = 'bysource'
