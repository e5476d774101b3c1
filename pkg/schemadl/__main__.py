# File: schemadl/__main__.py
"""python -m schemadl"""
from schemadl.cli import main

if __name__ == '__main__':
    main()
