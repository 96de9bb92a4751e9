"""Build script: compiles the optional Cython kernel extension.

The extension is an accelerator only; if Cython or a C compiler is
unavailable the install proceeds and the package falls back to the
pure-NumPy kernels at import time.
"""

import warnings

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            warnings.warn(f"building the compiled kernels failed ({exc}); "
                          "pulsedrop will use the pure-NumPy fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"building {ext.name} failed ({exc}); "
                          "pulsedrop will use the pure-NumPy fallback")


try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/pulsedrop/_kernels.pyx",
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
