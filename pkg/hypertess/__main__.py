"""
Main file for running hypertess with `python -m hypertess`.
"""
from hypertess.cli import main

if __name__ == "__main__":
    main()
