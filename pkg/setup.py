import os
import pathlib
import sys

from setuptools import find_packages, setup

here = os.path.abspath(os.path.dirname(__file__))
src = os.path.join(here, "src/mubs")
sys.path.append(src)


__license__ = "MIT"
__version__ = "0.1.0"

classifiers = [
    "Development Status :: 3 - Alpha",
    "Intended Audience :: Education",
    "Intended Audience :: Science/Research",
    "Natural Language :: English",
    "License :: OSI Approved :: MIT License",
    "Operating System :: OS Independent",
    "Programming Language :: Python :: 3 :: Only",
    "Topic :: Scientific/Engineering :: Mathematics",
    "Topic :: Scientific/Engineering :: Physics",
]

setup(
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    long_description=pathlib.Path("README.md").read_text(encoding="utf-8"),
    long_description_content_type="text/markdown",
    zip_safe=False,
    name="mubs",
    description="Exact construction and verification of mutually unbiased bases",
    license=__license__,
    version=__version__,
    python_requires=">=3.12",
    install_requires=["numpy", "pandas", "sympy"],
    extras_require={"test": ["pytest", "hypothesis"]},
    entry_points={"console_scripts": ["mubs=mubs.cli:main"]},
    keywords="mutually unbiased bases, quantum information, galois fields, galois rings",
    classifiers=classifiers,
)
