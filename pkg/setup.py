import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("FFKAKEYA_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("ffkakeya._kernels", ["src/ffkakeya/_kernels.pyx"])],
            language_level=3,
        )
    except ImportError:
        # No Cython: install with the pure-Python kernels only.
        pass

setup(ext_modules=ext_modules)
