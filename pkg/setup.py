from setuptools import setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install
    ext_modules = []
else:
    ext_modules = cythonize(
        ["src/dynfpt/_lct_c.pyx", "src/dynfpt/_ett_c.pyx", "src/dynfpt/_vc_c.pyx"],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
