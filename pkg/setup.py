"""Build script: compiles the optional SIS stepping kernel.

The package is fully functional without the extension (a numpy fallback is
selected at import time), so a failing C toolchain only costs speed.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Degrade to the pure-Python backend when the extension cannot build."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler / toolchain breakage
            warnings.warn(f"episwitch extension build failed ({exc}); "
                          "falling back to the pure-Python kernel")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"building {ext.name} failed ({exc}); "
                          "falling back to the pure-Python kernel")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        warnings.warn("Cython not available; building without the compiled kernel")
        return []
    ext = Extension(
        "episwitch._kernels._siskern",
        ["src/episwitch/_kernels/_siskern.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
