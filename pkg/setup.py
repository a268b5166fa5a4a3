import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("SEXTIC_NO_EXT"):
    ext_modules = cythonize(
        [Extension("sextic.fpgroup._coset", ["src/sextic/fpgroup/_coset.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
