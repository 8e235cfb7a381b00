"""Build hook for the optional compiled rank kernel.

The package is pure Python plus one Cython extension used to speed up
exact integer rank computations.  If Cython or a C compiler is missing
the build silently skips the extension and the package falls back to
the pure implementation at import time.
"""

from setuptools import Extension, setup


def _extensions():
    import os

    if not os.path.exists("src/dualcx/_rankcore.pyx"):
        return []
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "dualcx._rankcore",
        sources=["src/dualcx/_rankcore.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=_extensions())
