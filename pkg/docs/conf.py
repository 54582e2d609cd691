# Configuration file for the Sphinx documentation builder.
# https://www.sphinx-doc.org/en/master/usage/configuration.html

import os
import sys

sys.path.insert(0, os.path.abspath(".."))


# -- Project information -----------------------------------------------------

project = "fpbandit"
copyright = "2021, 09tangriro"
author = "09tangriro"


# -- General configuration ---------------------------------------------------

extensions = ["sphinx.ext.autodoc"]
autodoc_member_order = "bysource"
# torch is only imported when a tensorboard directory is given
autodoc_mock_imports = ["torch"]

templates_path = ["_templates"]
exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]


# -- Options for HTML output -------------------------------------------------

html_theme = "sphinx_rtd_theme"
html_static_path = ["_static"]
