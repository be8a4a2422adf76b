"""Build script: compiles the optional Cython kernel core.

The package is fully functional without the extension (a NumPy fallback is
selected at import time), so any failure here downgrades to a warning.
"""

import warnings

from setuptools import setup
from setuptools.command.build_ext import build_ext


def _extensions():
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError as exc:
        warnings.warn(f"compiled kernels skipped ({exc}); pure-Python backend will be used")
        return []
    ext = Extension(
        "combenergy._kernels._core",
        ["src/combenergy/_kernels/_core.pyx"],
        include_dirs=[np.get_include()],
    )
    return cythonize([ext], language_level=3)


class OptionalBuildExt(build_ext):
    """Treat extension build failures as non-fatal."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            warnings.warn(f"compiled kernels skipped ({exc}); pure-Python backend will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"building {ext.name} failed ({exc}); pure-Python backend will be used")


setup(ext_modules=_extensions(), cmdclass={"build_ext": OptionalBuildExt})
