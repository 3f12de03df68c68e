"""Build script. The compiled kernel is optional: if Cython or a C compiler
is unavailable the package falls back to the pure backend at import time."""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("MANNHEIM_SKIP_NATIVE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "mannheim.kernel._native",
                    sources=["src/mannheim/kernel/_native.pyx"],
                    extra_compile_args=["-O3"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
