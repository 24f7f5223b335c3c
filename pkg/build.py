"""
Build utility for the hypertess package.
It can be used as a module providing functions for other scripts.
It can also be used from the command line, with flags selecting the stages to run.
The exit code is nonzero if typechecking or the tests fail.
"""

import argparse
from pathlib import Path
import subprocess
import shutil
import sys

import mypy.api
import pdoc
import pytest

root_dir = Path(__file__).resolve().parent
dist_dir = root_dir / "dist"
docs_dir = root_dir / "documentation"
source_dir = root_dir / "hypertess"
tests_dir = root_dir / "tests"

def source_files() -> list[Path]:
    """
    Returns the python files of the package, which are the inputs of the documentation and the wheel.
    """
    return sorted(source_dir.glob("**/*.py"))

def update_needed(input_files: list[Path], output_file: Path) -> bool:
    """
    Returns True if and only if any of the input file has a newer modification time than the output file.
    A missing output file always needs an update.

    Args:
        input_files (list[Path]): list of input files
        output_file (Path): output file

    Returns:
        bool: True if an input file has a newer modification time than the output file.
    """
    if not output_file.exists():
        return True
    o_time = output_file.stat().st_mtime
    return any(i.stat().st_mtime > o_time for i in input_files)

def typechecking(include_tests: bool = False) -> bool:
    """
    Typechecks the package as a whole, so that imports between its modules are followed.

    Args:
        include_tests (bool, optional): also check the test files. Defaults to False.

    Returns:
        bool: True if mypy reported no errors.
    """
    targets = ["-p", source_dir.name]
    if include_tests:
        targets += [str(f) for f in sorted(tests_dir.glob("*.py"))]
    report, errors, status = mypy.api.run(targets + ["--ignore-missing-imports"])
    if report:
        print(report)
    if errors:
        print("\nErrors:\n", errors)
    return status == 0

def run_tests(slow: bool = False, keyword: str = "") -> int:
    """
    Runs the test suite.

    Args:
        slow (bool, optional): also run the tests marked as slow. Defaults to False.
        keyword (str, optional): only run the tests matching this pytest keyword expression. Defaults to all tests.

    Returns:
        int: the pytest exit code.
    """
    args = [str(tests_dir)]
    if not slow:
        args += ["-m", "not slow"]
    if keyword:
        args += ["-k", keyword]
    return int(pytest.main(args))

def generate_docs():
    """
    Generates html documentation for the hypertess package and its modules.
    """
    shutil.rmtree(docs_dir, ignore_errors = True)
    # Mermaid renders the class diagrams in the module docstrings.
    pdoc.render.configure(docformat = "google", mermaid = True)
    all_modules = {}
    for module_name in pdoc.extract.walk_specs([source_dir.name]):
        try:
            all_modules[module_name] = pdoc.doc.Module.from_name(module_name)
        except Exception as e:
            print("Cannot document module", module_name, e)

    for module in all_modules.values():
        out = pdoc.render.html_module(module, all_modules)
        outfile = docs_dir / f"{module.fullname.replace('.', '/')}.html"
        outfile.parent.mkdir(parents = True, exist_ok = True)
        outfile.write_bytes(out.encode())

    if index := pdoc.render.html_index(all_modules):
        (docs_dir / "index.html").write_bytes(index.encode())

    if search := pdoc.render.search_index(all_modules):
        (docs_dir / "search.js").write_bytes(search.encode())

def generate_wheel_file(force_update: bool = False) -> bool:
    """
    Generate a wheel file for the hypertess package.

    Args:
        force_update (bool, optional): update even if no input file changed. Defaults to False.

    Returns:
        bool: True if an update was performed, False otherwise.
    """
    # The newest wheel in the dist directory is taken to be the current one.
    wheels = list(dist_dir.glob("*.whl"))
    inputs = source_files() + [root_dir / "pyproject.toml"]
    if force_update or not wheels or update_needed(inputs, max(wheels, key = lambda f: f.stat().st_ctime)):
        subprocess.run(["flit", "build", "--format", "wheel"], cwd = root_dir, check = True)
        return True
    else:
        return False

if __name__ == "__main__":
    # Parse the command line arguments and store them in args.
    parser = argparse.ArgumentParser(description = "Build utility for the hypertess package.")
    parser.add_argument("--typecheck",  default = False, action = argparse.BooleanOptionalAction, help = "Run code typecheck")
    parser.add_argument("--test",       default = False, action = argparse.BooleanOptionalAction, help = "Run the tests")
    parser.add_argument("--slow",       default = False, action = argparse.BooleanOptionalAction, help = "Include the slow experiment tests when testing")
    parser.add_argument("-k",           default = "",    dest = "keyword",                        help = "Only run tests matching this keyword expression")
    parser.add_argument("--docs",       default = False, action = argparse.BooleanOptionalAction, help = "Generate documentation")
    parser.add_argument("--wheel",      default = False, action = argparse.BooleanOptionalAction, help = "Build a wheel file for the hypertess package")
    parser.add_argument("--all",        default = False, action = "store_true",                   help = "Run all build steps")

    args = parser.parse_args()
    failed = False

    # Typechecking
    if args.typecheck or args.all:
        print("Typecheck code")
        if not typechecking(include_tests = args.all):
            failed = True

    # Tests
    if args.test or args.all:
        print("Run tests")
        if run_tests(args.slow, args.keyword):
            print("Tests failed")
            failed = True

    # Documentation
    if args.docs or args.all:
        print("Generate documentation")
        generate_docs()

    # Wheel file for hypertess package
    if args.wheel or args.all:
        print("Generating wheel file")
        if not generate_wheel_file():
            print("No update needed")

    sys.exit(1 if failed else 0)
