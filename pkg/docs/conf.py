# Configuration file for the Sphinx documentation builder.
#
# For the full list of built-in configuration values, see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

import os
import sys
from datetime import date

sys.path.insert(0, os.path.abspath(".."))

from gtrace import __version__  # noqa: E402

# -- Project information -----------------------------------------------------

project = "gtrace"
copyright = f"{date.today().year}, Sage Bergerson <sageb@stanford.edu>"
author = "Sage Bergerson <sageb@stanford.edu>"
release = __version__

# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.githubpages",
    "sphinx.ext.mathjax",
    "sphinx_rtd_theme",
    "sphinx_click",
    "sphinx_autodoc_typehints",
    "myst_parser",
]

autodoc_member_order = "bysource"
autodoc_default_options = {"undoc-members": False, "show-inheritance": True}
typehints_fully_qualified = False
always_document_param_types = True

master_doc = "index"
language = "en"

exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]

# -- Options for HTML output -------------------------------------------------

html_theme = "sphinx_rtd_theme"

if os.path.exists("logo.png"):
    html_logo = "logo.png"
