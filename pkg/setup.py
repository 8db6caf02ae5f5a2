from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # build without the compiled kernel; rootlie falls back to Python
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("rootlie._fp", ["src/rootlie/_fp.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
