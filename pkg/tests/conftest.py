import random
from pathlib import Path

import pytest

from typominer import charlm, langid

FIXTURES = Path(__file__).parent / "fixtures"


def levenshtein_oracle(x: str, y: str) -> int:
    """Independent oracle: the recursive definition of edit distance,
    memoized on suffix indices only for speed."""
    memo: dict[tuple[int, int], int] = {}

    def d(i: int, j: int) -> int:
        if i == 0:
            return j
        if j == 0:
            return i
        key = (i, j)
        hit = memo.get(key)
        if hit is not None:
            return hit
        best = min(
            d(i - 1, j) + 1,
            d(i, j - 1) + 1,
            d(i - 1, j - 1) + (x[i - 1] != y[j - 1]),
        )
        memo[key] = best
        return best

    return d(len(x), len(y))


def random_unicode_string(rng: random.Random, max_len: int) -> str:
    pools = (
        "abcdefghij",
        "abcdefghijklmnopqrstuvwxyz ., ",
        "àéîöùñçßøå",
        "あいうえお学校行読書",
        "的一是了我不人在他有",
        "😀🎉🚀🐍💡",
    )
    n = rng.randrange(max_len + 1)
    pool = rng.choice(pools)
    return "".join(rng.choice(pool) for _ in range(n))


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def profiles():
    return langid.load_profiles(FIXTURES / "profiles")


@pytest.fixture(scope="session")
def eng_model():
    return charlm.CharLangModel.load(FIXTURES / "models" / "eng.lm")


@pytest.fixture(scope="session")
def models():
    return charlm.load_models(FIXTURES / "models")


@pytest.fixture()
def lev_oracle():
    return levenshtein_oracle
