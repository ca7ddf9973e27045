"""Build script: compiles the optional search-kernel extension.

The package works without the extension (a pure-Python twin is selected at
import time), so a failed compile only costs speed. Set SEQEXT_NO_EXT=1 to
skip the extension entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SEQEXT_NO_EXT") != "1" and os.path.exists("src/seqext/_ckernels.pyx"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "seqext._ckernels",
                    ["src/seqext/_ckernels.pyx"],
                    extra_compile_args=["-O2"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
