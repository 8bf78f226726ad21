"""
Setup file for stochmatch
"""

from setuptools import setup, find_packages

setup(
    name="stochmatch",
    version="0.1.0",
    description="""
    Online stochastic bipartite matching with probing constraints and
    commitment: relaxations, benchmarks, algorithms and experiments.
    """.strip(),
    packages=find_packages(exclude=["benchmark"]),
    package_dir={"stochmatch": "stochmatch"},
    package_data={"stochmatch": ["instances/*.json"]},
    python_requires=">=3.8",
    install_requires=[
        "attrs>=19.2.0",
        "numpy>=1.17",
        "Twisted>=16.2.0",
    ],
    extras_require={
        "crosscheck": ["scipy>=1.6"],
    },
    entry_points={
        "console_scripts": ["stochmatch = stochmatch._cli:tool"],
    },
    include_package_data=True,
    license="MIT",
    keywords="stochastic matching online algorithms probing commitment",
    classifiers=[
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
