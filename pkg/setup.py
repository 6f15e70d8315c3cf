from codecs import open
from os import path
from setuptools import setup, find_packages

# Get the long description from the README file
with open(path.join(path.abspath(path.dirname(__file__)), 'pypi_readme.md'), encoding='utf-8') as f:
    long_description = f.read()

setup(
    name="qkonc",
    version="0.1.0",
    description="Simulation laboratory for the exponential concentration of quantum fidelity kernels "
                "and the shot-budget based quantum runtime model.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    license="AGPLv3+",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: GNU General Public License v3 or later (GPLv3+)",
        "Natural Language :: English",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering",
        "Topic :: Scientific/Engineering :: Physics",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: System :: Benchmark",
        "Topic :: Utilities"
    ],
    keywords="quantum kernel fidelity concentration zz feature map statevector simulation shot noise runtime",
    package_dir={"": "src"},
    packages=find_packages("src"),
    install_requires=["numpy>=1.17", "joblib>=1.0", "threadpoolctl>=3.0"],
    extras_require={"test": ["pytest>=7.0"]},
    entry_points={"console_scripts": ["qkonc=qkonc.cli:main"]},
    python_requires=">=3.8"
)
