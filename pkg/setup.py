import os

from setuptools import setup

# The compiled kernels are an optional speedup; the package falls back to
# the pure-Python implementations in qmgw._kernels_py when the extension
# is absent.  Set QMGW_NO_EXT=1 to skip building it.
ext_modules = []
if os.environ.get("QMGW_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "qmgw._kernels",
                    ["src/qmgw/_kernels.pyx"],
                    extra_compile_args=["-O2"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
