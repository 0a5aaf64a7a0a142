import os
import sys

# Adiciona o diretório raiz do projeto ao sys.path
sys.path.insert(0, os.path.abspath('../..'))

from Harmonium import __version__  # noqa: E402

# Informações do projeto
project = 'Harmonium'
copyright = '2025, Miguel Araújo Julio'
author = 'Miguel Araújo Julio'
release = __version__

# Extensões do Sphinx
extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',         # docstrings no estilo NumPy
    'sphinx.ext.viewcode',
    'sphinx.ext.intersphinx',      # links para numpy, scipy e sympy
    'sphinx_autodoc_typehints',
    'myst_parser',
]

html_theme = 'sphinx_rtd_theme'

# As docstrings usam "Parameters:" / "Returns:" no estilo NumPy
napoleon_google_docstring = False
napoleon_numpy_docstring = True
napoleon_use_rtype = False

# Fraction e Enum aparecem com o nome curto
autodoc_member_order = 'bysource'
autodoc_typehints_format = 'short'
autodoc_default_options = {
    'members': True,
    'undoc-members': True,
    'show-inheritance': True,
    'exclude-members': '__weakref__',
}

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
    'sympy': ('https://docs.sympy.org/latest/', None),
    'matplotlib': ('https://matplotlib.org/stable/', None),
}

source_suffix = {
    '.rst': 'restructuredtext',
    '.md': 'markdown',
}
