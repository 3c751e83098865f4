"""Print one PASS/FAIL line per acceptance criterion (same checks as tests/test_acceptance.py)."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from test_acceptance import CRITERIA, emit  # noqa: E402


def main() -> int:
    passed = 0
    for k, crit in enumerate(CRITERIA, start=1):
        ok, detail = crit()
        emit(None, k, ok, detail)
        passed += ok
    print(f"{passed}/{len(CRITERIA)} criteria pass")
    return 0 if passed == len(CRITERIA) else 1


if __name__ == "__main__":
    sys.exit(main())
