from setuptools import setup, find_packages

setup(
    name='dalkit',
    version='0.1.0',
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    license='MIT',
    author='Sergio de los Santos',
    author_email='s.delossantos@gmail.com',
    description='Color-blind distinguishing edge-colorings toolkit',
    python_requires='>=3.9',
    install_requires=['networkx>=2.6'],
    entry_points={'console_scripts': ['dalkit=dalkit.cli:main']},
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    keywords=['graph theory', 'edge coloring', 'color-blind', 'distinguishing coloring'],
)
