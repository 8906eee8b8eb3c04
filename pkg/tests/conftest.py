"""Collects acceptance-criterion outcomes and prints one line per criterion."""

from collections import OrderedDict

import pytest

_RESULTS = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, text): acceptance criterion covered by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call":
        return
    cid, text = marker.args
    detail = dict(item.user_properties).get("detail", "")
    _RESULTS.setdefault(cid.rstrip("abcdefghij"), []).append((cid, text, rep.passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(_RESULTS, key=int):
        parts = _RESULTS[crit]
        ok = all(p[2] for p in parts)
        tr.write_line(f"criterion {crit}: {'PASS' if ok else 'FAIL'}")
        for cid, text, passed, detail in parts:
            tr.write_line(f"    [{'PASS' if passed else 'FAIL'}] {cid} {text}: {detail}")
