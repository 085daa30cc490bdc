# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

import logging
import tempfile
from collections.abc import Iterable
from pathlib import Path

logger = logging.getLogger(__name__)


class FsUtil:
    """Utility class for experiment artifacts on disk."""

    @staticmethod
    def create_file(path: Path, content: str, overwrite: bool = False) -> None:
        """Create a file atomically, creating its parent directory when missing.

        Args:
            path: Path where the file should be created
            content: Content to write to the file
            overwrite: Whether to replace an existing file

        Raises:
            FileExistsError: If the file already exists and overwrite is False
        """
        if path.exists() and not overwrite:
            raise FileExistsError(f"Cannot create file that already exists: {path}")

        path.parent.mkdir(parents=True, exist_ok=True)
        FsUtil._atomic_write(path, content)
        logger.debug(f"Wrote {path}")

    @staticmethod
    def write_lines(path: Path, lines: Iterable[str], overwrite: bool = True) -> None:
        """Write one line per item, each terminated by a newline."""
        FsUtil.create_file(path, "".join(f"{line}\n" for line in lines), overwrite=overwrite)

    @staticmethod
    def read_file(path: Path) -> str:
        """Read the contents of a file.

        Raises:
            FileNotFoundError: If the file doesn't exist
        """
        return path.read_text(encoding="utf-8")

    @staticmethod
    def read_lines(path: Path) -> list[str]:
        """Non-empty lines of a file, without their newlines."""
        return [line for line in FsUtil.read_file(path).splitlines() if line.strip()]

    @staticmethod
    def _atomic_write(path: Path, content: str) -> None:
        with tempfile.NamedTemporaryFile(mode="w", encoding="utf-8", dir=path.parent, delete=False) as temp_file:
            temp_file.write(content)
            temp_file.flush()
            temp_path = Path(temp_file.name)

        temp_path.replace(path)
