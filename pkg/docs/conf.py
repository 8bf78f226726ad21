#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# stochmatch documentation build configuration file.

import os
import sys

docs_dir = os.path.dirname(os.path.abspath(__file__))
stochmatch_dir = os.path.dirname(docs_dir)
sys.path.insert(0, stochmatch_dir)


# -- General configuration ------------------------------------------------

extensions = ["sphinx.ext.autodoc"]
templates_path = ["_templates"]
source_suffix = ".rst"
master_doc = "index"

project = "stochmatch"
copyright = "2026, the stochmatch developers"
author = "the stochmatch developers"


def _get_release():
    import pkg_resources

    try:
        distribution = pkg_resources.get_distribution(project)
    except pkg_resources.DistributionNotFound:
        raise Exception("You must install stochmatch to build the documentation.")
    else:
        return distribution.version


# The full version, including alpha/beta/rc tags.
release = _get_release()
# The short X.Y version.
version = ".".join(release.split(".")[:2])

language = None
exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]
pygments_style = "sphinx"
todo_include_todos = False


# -- Options for HTML output ----------------------------------------------

html_theme = "sphinx_rtd_theme"
html_static_path = ["_static"]
htmlhelp_basename = "stochmatchdoc"


# -- Options for manual page output ---------------------------------------

man_pages = [(master_doc, "stochmatch", "stochmatch Documentation", [author], 1)]
