import pytest

from spinroot import verify


@pytest.fixture(scope="session")
def acceptance_results():
    import time

    t0 = time.time()
    results = verify.run_all(n_max=12)
    elapsed = time.time() - t0
    return results, elapsed
