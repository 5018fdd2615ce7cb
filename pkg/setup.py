import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name="pkratzer",
    version="1.0.0",
    author="pkratzer developers",
    description="Bound states, SU(1,1) ladder operators and matrix elements of the generalized Kratzer potential",
    long_description=long_description,
    long_description_content_type="text/markdown",
    include_package_data=True,
    packages=setuptools.find_packages(include=["pkratzer"]),
    package_data={"pkratzer": ["data/*.json"]},
    install_requires=["numpy", "scipy", "typer"],
    entry_points={"console_scripts": ["pkratzer = pkratzer.cli:app"]},
    classifiers=[
        "Natural Language :: English",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "License :: OSI Approved :: GNU General Public License v3 (GPLv3)",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Physics",
    ],
    python_requires=">=3.9"
)
