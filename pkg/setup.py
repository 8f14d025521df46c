from setuptools import setup
from setuptools import find_packages
import os
import re


with open("README.md", "r") as fs:
    long_description = fs.read()


def find_version(*file_paths):
    """
    Read the version instead of importing it so that a missing dependency listed in
    install_requires does not break setup.
    """
    base_module_file = os.path.join(*file_paths)
    with open(base_module_file) as f:
        base_module_data = f.read()
    version_match = re.search(
        r"^__version__ = ['\"]([^'\"]*)['\"]", base_module_data, re.M
    )
    if version_match:
        return version_match.group(1)
    raise RuntimeError("Unable to find version string.")


setup(
    name="gapchain",
    version=find_version("gapchain", "__init__.py"),
    description="Desk-scale toolkit for parameterized gap reductions: 3SAT to VectorSum to "
    "Gap Clique, expander products, and the biclique/densest subgraph chain",
    long_description=long_description,
    long_description_content_type="text/markdown",
    license="MIT",
    classifiers=[
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
    ],
    packages=find_packages(exclude=("test*",)),
    package_data={"gapchain": ["templates/*.textfsm"]},
    python_requires=">=3.8",
    install_requires=[
        "setuptools>=38.4.0",
        "tenacity",
        "textfsm>=1.1.2",
        "PyYAML>=5.4",
        "numpy>=1.20",
        "scipy>=1.6",
    ],
    entry_points={
        "console_scripts": [
            "gapchain-reduce = gapchain.cli_tools.gapchain_reduce:main_ep",
            "gapchain-verify = gapchain.cli_tools.gapchain_verify:main_ep",
            "gapchain-oracle = gapchain.cli_tools.gapchain_oracle:main_ep",
            "gapchain-adj = gapchain.cli_tools.gapchain_adj:main_ep",
            "gapchain-ldt = gapchain.cli_tools.gapchain_ldt:main_ep",
        ]
    },
)
