import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make `oracles` importable

from primedensity import PiValue, prime_pi_fast  # noqa: E402


@pytest.fixture(scope="session")
def pi_powers_10() -> dict[int, PiValue]:
    """Exact counts at 10**n for n = 1..10 (combinatorial counter, ~1 s)."""
    return {n: prime_pi_fast(10 ** n) for n in range(1, 11)}
