#!/usr/bin/env python3
"""Standalone acceptance runner (same checks as `planar-holant acceptance`)."""

import sys

from planar_holant.acceptance import run_acceptance


def main():
    only = sys.argv[1] if len(sys.argv) > 1 else None
    report = run_acceptance(only=only)
    for line in report.lines:
        print(line)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
