import sys

import pytest

from dynfpt import dynconn, linkcut, vckernel

LCT_BACKENDS = ["py"] + (["c"] if linkcut.CCore is not None else [])
ETT_BACKENDS = ["py"] + (["c"] if dynconn.CETT is not None else [])
VC_BACKENDS = ["py"] + (["c"] if vckernel.CCore is not None else [])


@pytest.fixture(params=LCT_BACKENDS)
def lct_backend(request):
    return request.param


@pytest.fixture(params=ETT_BACKENDS)
def ett_backend(request):
    return request.param


@pytest.fixture(params=VC_BACKENDS)
def vc_backend(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS.values():
        terminalreporter.write_line(line)
