"""Builds the optional compiled reachability kernel.

The package works without it: ontosub.hierarchy falls back to the pure-Python
kernel when the extension is missing or ONTOSUB_PURE_PYTHON is set.
"""

import os

from setuptools import Extension, setup


def extensions():
    if os.environ.get("ONTOSUB_SKIP_EXT"):
        return []
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "ontosub._reach",
        sources=["src/ontosub/_reach.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O2"],
    )
    return cythonize([ext], language_level="3")


setup(ext_modules=extensions())
