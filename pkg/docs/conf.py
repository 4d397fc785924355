# -*- coding: utf-8 -*-
#
# graphbench documentation build configuration file
#
# This file is execfile()d with the current directory set to its
# containing dir.

import glob
from datetime import date

# -- General configuration ------------------------------------------------

extensions = ['sphinx.ext.mathjax',
              'sphinx.ext.autodoc',
              'sphinx.ext.autosummary',
              'sphinx.ext.viewcode',
              'sphinx.ext.todo',
              'sphinx.ext.doctest',
              'sphinx.ext.napoleon',
              'sphinx.ext.intersphinx',
              'sphinx.ext.githubpages']

napoleon_numpy_docstring = True

templates_path = ['_templates']
source_suffix = ['.rst']
master_doc = 'index'

rst_prolog = """
.. highlight:: python
"""

autosummary_generate = glob.glob('*.rst') + glob.glob('*/*.rst')
autosummary_generate = [f for f in autosummary_generate if 'api-generated' not in f]

project = u'graphbench'
copyright = f'{date.today().year}, the graphbench developers'
author = u'the graphbench developers'

# info.py is written by setup.py
try:
    import graphbench.info as info
    release = info.release
except ImportError:
    release = 'unknown'
version = release

language = None
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

autoclass_content = 'class'
autodoc_default_options = {
    'members': True,
    'undoc-members': True,
    'show-inheritance': True,
}

default_role = 'autolink'
pygments_style = 'sphinx'
modindex_common_prefix = ['graphbench.']
todo_include_todos = True
add_function_parentheses = False

# -- Options for HTML output ----------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_title = "graphbench documentation"
html_short_title = "graphbench"
html_sidebars = {
    '**': [
        'relations.html',
        'searchbox.html',
    ]
}
html_use_modindex = True
html_use_index = True
htmlhelp_basename = 'graphbench'

# -- Options for LaTeX and manual page output -----------------------------

latex_documents = [
    (master_doc, 'graphbench.tex', u'graphbench Documentation', author, 'manual'),
]
man_pages = [
    (master_doc, 'graphbench', u'graphbench Documentation', [author], 1)
]

class_members_toctree = False
numpydoc_show_class_members = False

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/reference', None),
    'matplotlib': ('https://matplotlib.org/stable', None),
}


def setup(app):
    import os
    import subprocess as sp
    for script in ('../conf_prepare.sh', 'conf_prepare.sh'):
        if os.path.isfile(script):
            print(f"# Running {script}")
            sp.call(['bash', script])
            print(f"\n# Done running {script}")
            break
    print("")
