import os

from setuptools import setup

ext_modules = []
if os.environ.get("SHIFTEDQ_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/shiftedq/_kernel_cy.pyx"], language_level=3
        )
    except ImportError:
        # pure-Python fallback is selected at import time
        ext_modules = []

setup(ext_modules=ext_modules)
