import pathlib

from setuptools import find_packages, setup


HERE = pathlib.Path(__file__).parent

VERSION = "0.1.0"
PACKAGE_NAME = "herox"

LICENSE = "Apache 2.0"
DESCRIPTION = "Hero blood-bar detection, camp classification and recognition for MOBA video frames, in JAX."
LONG_DESCRIPTION = (HERE / "README.md").read_text()
LONG_DESC_TYPE = "text/markdown"

INSTALL_REQUIRES = [
    "jax>=0.4.14",
    "jaxtyping>=0.2.14",
    "equinox>=0.11.0",
    "numpy",
    "scipy",
    "pandas>=1.5.3",
    "pillow>=9.0",
    "pydantic>=2.0",
]
TESTS_REQUIRES = ["pytest", "hypothesis", "absl-py", "psutil", "scipy", "numpy"]

setup(
    name=PACKAGE_NAME,
    version=VERSION,
    description=DESCRIPTION,
    long_description=LONG_DESCRIPTION,
    long_description_content_type=LONG_DESC_TYPE,
    license=LICENSE,
    install_requires=INSTALL_REQUIRES,
    extras_require={
        "tests": TESTS_REQUIRES,
        "complete": INSTALL_REQUIRES + TESTS_REQUIRES,
    },
    entry_points={"console_scripts": ["herox = herox.cli:main"]},
    packages=find_packages(exclude=["tests", "tests.*"]),
    python_requires=">=3.9",
)
