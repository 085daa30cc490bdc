#!/usr/bin/env python
"""
Developer tasks: linting, formatting, testing, building and a small demo experiment.

Run them with `uv run <script_name>` from the project root; they are listed under `[project.scripts]`.
"""

import shlex
import subprocess
import sys
from pathlib import Path


def find_project_root(start_path: Path = Path(__file__)) -> Path:
    """Find the project root by looking for marker files."""
    current = start_path.parent
    while current != current.parent:
        if any((current / marker).exists() for marker in ["pyproject.toml", ".env"]):
            return current
        current = current.parent
    raise RuntimeError("Could not find project root")


_PROJECT_ROOT = find_project_root()

SRC_DIR: Path = _PROJECT_ROOT / "src" / "expander_pruning"
TEST_DIR: Path = _PROJECT_ROOT / "tests"
PACKAGES_DIR: Path = _PROJECT_ROOT / "packages"
DEMO_DIR: Path = _PROJECT_ROOT / "runs" / "demo"


def get_package_dirs() -> list[Path]:
    """Workspace members that carry their own pyproject.toml."""
    if not PACKAGES_DIR.exists():
        return []
    return sorted(d for d in PACKAGES_DIR.iterdir() if d.is_dir() and (d / "pyproject.toml").exists())


def step(cmd: str, description: str = "", cwd: Path = _PROJECT_ROOT) -> None:
    """Run one command, exiting with status 1 if it fails."""
    if description:
        print(f"Running: {description}")
    try:
        subprocess.run(shlex.split(cmd), check=True, cwd=cwd)
    except subprocess.CalledProcessError as e:
        print(f"Error: {e}")
        sys.exit(1)


def help() -> None:
    """Print help."""
    print("Available commands:")
    print("  help            - Print help")
    print("  demo            - Run a short hypercube experiment and verify its log")
    print("  lint            - Run ruff and mypy (main + packages)")
    print("  format          - Format the code (main + packages)")
    print("  test            - Run tests (main + packages)")
    print("  test-coverage   - Run tests with coverage (main + packages)")
    print("  build           - Build the main distribution")
    print("  lint-packages   - Run ruff and mypy on packages only")
    print("  test-packages   - Run tests on packages only")
    print("  build-packages  - Build every package")


def demo() -> None:
    """Run 4 deletions on K16 with the worst-case pruner, then replay the log."""
    step(
        f"uv run expander_pruning run --generate complete --n 16 --phi 1/2 --deletions 4 "
        f"--checks oracle_small --out {DEMO_DIR}",
        "demo experiment",
    )
    step(f"uv run expander_pruning verify --log {DEMO_DIR}", "demo verification")


def _for_packages(action: str, commands: list[tuple[str, str]]) -> None:
    """Run `commands` (format strings over {path}) on the src and tests of every package."""
    for pkg_dir in get_package_dirs():
        print(f"\n--- {action} package: {pkg_dir.name} ---")
        for path in (pkg_dir / "src", pkg_dir / "tests"):
            if not path.exists():
                continue
            for cmd, label in commands:
                step(cmd.format(path=path), f"{label} ({pkg_dir.name}/{path.name})", pkg_dir)


def lint() -> None:
    """Lint the main project, then every package."""
    step(f"uv run ruff check {SRC_DIR} {TEST_DIR}", "ruff checks (main)")
    step(f"uv run mypy --cache-fine-grained {SRC_DIR} {TEST_DIR}", "mypy checks (main)")
    lint_packages()


def lint_packages() -> None:
    _for_packages(
        "Linting",
        [("uv run ruff check {path}", "ruff checks"), ("uv run mypy --cache-fine-grained {path}", "mypy checks")],
    )


def format() -> None:
    """Format the main project, then every package."""
    step(f"uv run ruff format {SRC_DIR} {TEST_DIR}", "ruff formatting (main)")
    step(f"uv run ruff check --fix {SRC_DIR} {TEST_DIR}", "ruff check and fix (main)")
    _for_packages(
        "Formatting",
        [("uv run ruff format {path}", "ruff formatting"), ("uv run ruff check --fix {path}", "ruff check and fix")],
    )


def test() -> None:
    """Run pytest on the main project, then on every package."""
    step(f"uv run pytest {TEST_DIR} -vv --cache-clear", "pytest (main)")
    test_packages()


def test_packages() -> None:
    for pkg_dir in get_package_dirs():
        test_dir = pkg_dir / "tests"
        if test_dir.exists():
            print(f"\n--- Testing package: {pkg_dir.name} ---")
            step(f"uv run pytest {test_dir} -vv --cache-clear", f"pytest ({pkg_dir.name})", pkg_dir)


def test_coverage() -> None:
    """Run tests with coverage on the main project and every package."""
    step(f"uv run pytest {TEST_DIR} -vv --cache-clear --cov {SRC_DIR}", "pytest with coverage (main)")
    for pkg_dir in get_package_dirs():
        src_dir, test_dir = pkg_dir / "src", pkg_dir / "tests"
        if test_dir.exists() and src_dir.exists():
            print(f"\n--- Testing package with coverage: {pkg_dir.name} ---")
            step(
                f"uv run pytest {test_dir} -vv --cache-clear --cov {src_dir}",
                f"pytest with coverage ({pkg_dir.name})",
                pkg_dir,
            )


def build() -> None:
    step("uv build", "Building expander-pruning")


def build_packages() -> None:
    for pkg_dir in get_package_dirs():
        print(f"\n--- Building package: {pkg_dir.name} ---")
        step("uv build", f"Building {pkg_dir.name}", pkg_dir)
