import setuptools

short_description = "scenval validates scenario generators with nearest neighbour statistics."

try:
    with open("README.rst", "r") as handle:
        long_description = handle.read()
except:
    long_description = short_description

version = {}
with open("scenval/_version.py", "r") as handle:
    exec(handle.read(), version)

if __name__ == "__main__":
    setuptools.setup(
        name="scenval",
        description="Nearest neighbour coincidence and memorizing ratio for scenario generator validation.",
        license="BSD-3C",
        version=version["__version__"],
        packages=setuptools.find_packages(),
        include_package_data=True,
        python_requires=">=3.7",
        install_requires=[
            "numpy>=1.20",
            "scipy>=1.7",
            "pandas>=1.3",
            "qcelemental>=0.20.0",
            "msgpack>=1.0",
        ],
        extras_require={
            "docs": [
                "sphinx",
                "sphinxcontrib-napoleon",
                "sphinx-automodapi",
                "sphinx_rtd_theme",
                "numpydoc",
            ],
            "tests": ["pytest", "pytest-cov",],
        },
        tests_require=["pytest", "pytest-cov",],
        entry_points={"console_scripts": ["scenval=scenval.cli:main"]},
        classifiers=[
            "Development Status :: 4 - Beta",
            "Intended Audience :: Science/Research",
            "Programming Language :: Python :: 3",
        ],
        zip_safe=False,
        long_description=long_description,
        long_description_content_type="text/x-rst",
    )
