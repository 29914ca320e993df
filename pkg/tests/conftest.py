import random

import pytest
from hypothesis import settings

from milnorck import catalog
from milnorck.constructions import random_self_ck_move

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

SMALL_LINKS = ["unknot", "unlink-2", "unlink-3", "hopf", "hopf-alt", "trefoil", "trefoil-alt",
               "whitehead", "whitehead-alt", "borromean", "borromean-alt"]
ALL_LINKS = SMALL_LINKS + ["wh-double-borromean", "wh-double-borromean-alt", "wh-wh-hopf", "wh-wh-hopf-alt"]


def random_diagrams(count, seed=0, k_max=2):
    """Random self C_k-moves applied to small catalog links."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        d = catalog(rng.choice(SMALL_LINKS))
        c = rng.randrange(1, d.n_components + 1)
        k = rng.randint(1, k_max)
        out.append(random_self_ck_move(d, c, k, rng))
    return out


@pytest.fixture(scope="session")
def randomized():
    return random_diagrams(40, seed=11)


ACCEPTANCE_LINES: dict[int, str] = {}


def record(criterion: int, ok: bool, detail: str):
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[criterion] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
