import pytest
from hypothesis import settings

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # compile (or load cached) kernels once so timings below measure work only
    from ddb.cosets import group_order
    from ddb.words import Presentation, Word

    group_order(Presentation(("a",), (Word.gen(0, 2),)))
