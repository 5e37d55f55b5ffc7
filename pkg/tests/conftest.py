import pytest

from bisc import MeshPattern, Perm

ACCEPTANCE_LINES: list[str] = []


def P(text: str) -> Perm:
    return Perm.parse(text)


def MP(text: str) -> MeshPattern:
    return MeshPattern.parse(text)


@pytest.fixture
def record_criterion():
    def record(cid: str, ok: bool, detail: str = "") -> None:
        line = f"criterion {cid:>2}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
