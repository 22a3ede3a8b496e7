"""Build script: compiles the optional Cython twin of the polynomial kernel.

The package is fully functional without the extension (a pure-Python kernel
is selected at import time if the compiled one is missing), so any failure
here degrades to a pure install instead of breaking it.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/ogzkit/_poly_cy.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - toolchain-dependent
    print(f"warning: skipping compiled kernel ({exc}); pure-Python kernel will be used")

setup(ext_modules=ext_modules)
