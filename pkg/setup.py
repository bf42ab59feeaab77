"""Builds the optional compiled kernels; the package works without them."""
import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    # a failed compile falls back to the pure Python kernels
    def run(self):
        try:
            super().run()
        except Exception as err:
            print(f"warning: compiled kernels not built ({err})", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as err:
            print(f"warning: {ext.name} not built ({err})", file=sys.stderr)


ext_modules = []
if not os.environ.get("SCHUBSEP_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython missing, using pure Python kernels", file=sys.stderr)
    else:
        ext_modules = cythonize(
            [Extension("schubsep._kernels", ["src/schubsep/_kernels.pyx"])],
            language_level=3,
            quiet=True,
        )

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
