#!/usr/bin/env python3

import sys

from .cli import stframes


def main() -> int:
    return stframes(sys.argv[1:])


if __name__ == '__main__':
    sys.exit(main())
