from __future__ import annotations

import sys
from typing import Optional

from cli import run


def main(argv: Optional[list[str]] = None) -> int:
    """Process entrypoint

    Args:
        argv (Optional[list[str]]): Arguments without the program name, defaults to
            sys.argv[1:]

    Returns:
        int: Exit code
    """
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
