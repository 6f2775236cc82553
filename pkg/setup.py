"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a pure-Python kernel module is
selected at import time); building it is strongly recommended for the
experiment harness, which spends nearly all of its time in the kernels.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize

    ext = Extension(
        "seqrank._kernels",
        ["src/seqrank/_kernels.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        optional=True,
    )
    ext_modules = cythonize([ext], language_level=3)
except ImportError:
    # No Cython/numpy at build time: install the pure-Python package only.
    pass

setup(ext_modules=ext_modules)
