from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("schurcurves._poly_kernel", ["src/schurcurves/_poly_kernel.pyx"])],
        language_level="3",
    )
except ImportError:
    # The package runs on the pure-Python kernel if the extension is absent.
    ext_modules = []

setup(ext_modules=ext_modules)
