"""One test per acceptance criterion; each also reports a PASS/FAIL line."""
import pytest

from whlab import verify

from conftest import ACCEPTANCE_LINES


@pytest.mark.parametrize("number", range(1, 13))
def test_criterion(number):
    result = verify.CHECKS[number - 1]()
    line = result.line()
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert result.exact, line
    assert result.elapsed < result.limit, line


if __name__ == "__main__":
    for check in verify.CHECKS:
        print(check().line(), flush=True)
