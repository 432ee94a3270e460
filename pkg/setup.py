"""Build script for the optional compiled kernel extension.

The package works without the extension (a pure-Python fallback is selected
at import time); building it just makes the Monte Carlo loop and the
landscape sweeps fast.
"""

from setuptools import setup

try:
    import numpy
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
    include_dirs = []
else:
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "metaising._kernels",
                ["src/metaising/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
