import pytest

from xop_pdm.models import JacobiModel, LaguerreModel


@pytest.fixture(scope="session")
def fig1():
    return LaguerreModel(b=1.0, alpha=2.0)


@pytest.fixture(scope="session")
def fig2():
    return JacobiModel(a=0.2, alpha=2.0, beta=2.5)


@pytest.fixture(scope="session", params=["laguerre", "jacobi"])
def model(request, fig1, fig2):
    return fig1 if request.param == "laguerre" else fig2


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance as acc  # noqa: WPS433

    if acc.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in acc.RESULTS:
            terminalreporter.write_line(line)
