"""Build script: compiles the optional Jacobi kernel when Cython is available.

The package is fully functional without the extension; ``tenrol.unfold``
falls back to the pure numpy kernel at import time.
"""

from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize

    HAS_CYTHON = True
except ImportError:
    HAS_CYTHON = False

if HAS_CYTHON:
    extensions = cythonize(
        [
            Extension(
                "tenrol._jacobi_cy",
                sources=["src/tenrol/_jacobi_cy.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
else:
    extensions = []

setup(ext_modules=extensions)
