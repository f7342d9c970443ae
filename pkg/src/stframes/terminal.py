import sys
from pathlib import Path

from .error import StfIOError


def stdout(*args, **kwargs):
    print(*args, **kwargs)  # noqa: T201


def stderr(*args, **kwargs):
    print(*args, file=sys.stderr, **kwargs)  # noqa: T201


def write_output(path: str, data: bytes) -> None:
    try:
        Path(path).write_bytes(data)
    except OSError as e:
        raise StfIOError(f'cannot write {path}: {e.strerror}') from e


def read_input(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as e:
        raise StfIOError(f'cannot read {path}: {e.strerror}') from e
