"""Builds the optional compiled simplex kernel.

The package works without it: cohkit.lp falls back to the pure-Python
kernel when the extension is missing (see cohkit._kernel).
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("cohkit._simplex_cy", ["src/cohkit/_simplex_cy.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
