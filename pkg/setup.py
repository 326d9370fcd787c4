"""Builds the optional compiled kernel extension.

The package works without the extension (a numpy fallback is selected at
import time), so a failed compile only costs speed, never correctness.
Set CITEGRAPH_SKIP_EXT=1 to skip the build entirely.
"""

import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class _OptionalBuildExt(build_ext):
    """Build the extension if possible; degrade to pure python otherwise."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"warning: building citegraph._ckernels failed ({exc}); "
            "falling back to the pure-python kernels",
            file=sys.stderr,
        )


ext_modules = []
if not os.environ.get("CITEGRAPH_SKIP_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "citegraph._ckernels",
                    ["src/citegraph/_ckernels.pyx"],
                    language="c++",
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
                "initializedcheck": False,
            },
        )
    except ImportError:
        print("warning: Cython not available; using pure-python kernels", file=sys.stderr)

setup(ext_modules=ext_modules, cmdclass={"build_ext": _OptionalBuildExt})
