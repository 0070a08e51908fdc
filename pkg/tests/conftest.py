import pytest

import fanochain as fc


@pytest.fixture(scope="session")
def chain2():
    """Chain with kappa = 1, kappa1 = 2 (the strongly coupled figure setup)."""
    return fc.TightBindingChain(kappa=1.0, kappa1=2.0)


@pytest.fixture(scope="session")
def fig3_trajectory():
    return fc.simulate(fc.build_config("fig3"))


@pytest.fixture(scope="session")
def fig4_trajectory():
    return fc.simulate(fc.build_config("fig4"))


@pytest.fixture(scope="session")
def fig5_outcome():
    return fc.run_preset("fig5")
