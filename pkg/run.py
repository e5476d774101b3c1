# File: run.py
"""
Main entry point for the command line.
Usage: python run.py <verb> [options]
"""
from schemadl.cli import main

if __name__ == '__main__':
    main()
