"""Build script: compiles the optional fast kernel when a C toolchain is around.

The package works without the extension; flagflux._kernel falls back to the
pure-Python twin at import time.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("FLAGFLUX_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("flagflux._fastforms", ["src/flagflux/_fastforms.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
