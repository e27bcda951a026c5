# Sphinx configuration for the sspt-py docs.
# https://www.sphinx-doc.org/en/master/usage/configuration.html

import os
import sys

# autodoc imports sspt from the checkout, not from an installed wheel
sys.path.insert(0, os.path.abspath("../.."))

project = "sspt-py"
copyright = "2026, Zachery Thomas"
author = "Zachery Thomas"
release = "0.1.0"

extensions = ["sphinx.ext.autodoc", "sphinx.ext.intersphinx"]
autodoc_member_order = "bysource"
autodoc_typehints = "description"

intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "networkx": ("https://networkx.org/documentation/stable", None),
}

templates_path = ["_templates"]
exclude_patterns = []

html_theme = "sphinx_rtd_theme"
html_static_path = ["_static"]
