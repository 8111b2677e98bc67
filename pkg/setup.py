from setuptools import setup, find_packages

setup(
    name="ratlam",
    version="0.1.0",
    packages=find_packages(include=["ratlam*"]),
    install_requires=[
        "pydantic>=2.5.0",
        "networkx>=3.0",
        "pydot>=1.4.2",
        "click>=8.0.0",
        "python-dotenv>=1.0.0",
        "lark>=1.1.0",
    ],
    extras_require={
        "dev": [
            "pytest>=8.0.0",
        ]
    },
    entry_points={
        "console_scripts": [
            "ratlam=ratlam.cli.main:cli",
        ],
    },
    python_requires=">=3.9",
    description="Rational lambda-Sigma terms: solving, unfolding and interpreting higher-order recursion schemes",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
    ],
)
