"""Build script: compiles the straightening kernel when Cython and a C compiler are available.

Any failure falls back to the pure-Python kernel, which has the same interface.
"""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001 - any build problem means "use the fallback"
            self.warn(f"compiled kernel not built ({exc}); using the pure-Python kernel")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            self.warn(f"compiled kernel not built ({exc}); using the pure-Python kernel")


def extensions():
    if os.environ.get("QCANON_PURE_PYTHON"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(["src/qcanon/_kernel.pyx"], language_level=3, quiet=True)


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
