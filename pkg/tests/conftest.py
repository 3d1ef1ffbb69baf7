import pytest

from mobsum.summatory import ScaledMoebiusPrefix, SummatoryTables


@pytest.fixture(scope="session")
def tables_2k() -> SummatoryTables:
    return SummatoryTables(2000)


@pytest.fixture(scope="session")
def prefix_2k() -> ScaledMoebiusPrefix:
    return ScaledMoebiusPrefix(2000)
