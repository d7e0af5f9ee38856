import itertools
import math
import random

import pytest

from typominer.charlm import (
    CharLangModel,
    InsufficientDataError,
    train_lm,
    perplexity,
)

from conftest import random_unicode_string


@pytest.fixture(scope="module")
def symmetric_model():
    # every length-6 string over {a,b,c,d}: all conditional distributions are
    # uniform over the four symbols by symmetry
    lines = ["".join(t) for t in itertools.product("abcd", repeat=6)]
    return train_lm(lines, order=5)


def test_uniform_model_perplexity_is_alphabet_size(symmetric_model):
    for text in ["abcd", "ddca", "a", "abcdabcdabcd", "dcb"]:
        assert perplexity(symmetric_model, text) == pytest.approx(4.0, abs=1e-6)


def test_degenerate_model_perplexity_one():
    model = train_lm(["a" * 100] * 100, order=5)
    assert perplexity(model, "aaaa") == pytest.approx(1.0, abs=1e-6)


def test_order2_conditional_from_training_string():
    model = train_lm(["ab" * 50] * 100, order=2)
    assert model.prob("b", "a") >= 0.99


def test_distributions_sum_to_one(symmetric_model):
    rng = random.Random(13)
    for _ in range(100):
        ctx = random_unicode_string(rng, 6)
        dist = symmetric_model.next_char_distribution(ctx)
        assert math.fsum(dist.values()) == pytest.approx(1.0, abs=1e-9)
        assert all(0.0 < p <= 1.0 for p in dist.values())


def test_distributions_sum_to_one_english(eng_model):
    rng = random.Random(99)
    for _ in range(50):
        ctx = random_unicode_string(rng, 5)
        dist = eng_model.next_char_distribution(ctx)
        assert math.fsum(dist.values()) == pytest.approx(1.0, abs=1e-9)


def test_perplexity_at_least_one(eng_model):
    rng = random.Random(5)
    for _ in range(50):
        text = random_unicode_string(rng, 30)
        if text:
            assert perplexity(eng_model, text) >= 1.0


def test_random_string_harder_than_training_like(eng_model):
    rng = random.Random(21)
    gibberish = "".join(rng.choice("zqxjkvw") for _ in range(20))
    sentence = "The teacher reads a long letter."
    assert perplexity(eng_model, gibberish) >= perplexity(eng_model, sentence)


def test_retraining_is_deterministic():
    lines = ["the quick brown fox"] * 600
    a = train_lm(lines, order=4)
    b = train_lm(lines, order=4)
    assert a.counts == b.counts


def test_save_load_round_trip(tmp_path, symmetric_model):
    path = tmp_path / "model.lm"
    symmetric_model.save(path)
    loaded = CharLangModel.load(path)
    assert loaded.order == symmetric_model.order
    assert loaded.counts == symmetric_model.counts
    assert perplexity(loaded, "abcd") == perplexity(symmetric_model, "abcd")
    # deterministic bytes
    path2 = tmp_path / "model2.lm"
    symmetric_model.save(path2)
    assert path.read_bytes() == path2.read_bytes()


def test_insufficient_data_rejected():
    with pytest.raises(InsufficientDataError):
        train_lm(["too short"], order=3)
    with pytest.raises(InsufficientDataError):
        train_lm([], order=3)


def test_empty_text_perplexity_rejected(symmetric_model):
    with pytest.raises(ValueError):
        perplexity(symmetric_model, "")


def test_unseen_chars_scored_via_unk(symmetric_model):
    assert perplexity(symmetric_model, "zzzz") > 4.0
    p = symmetric_model.prob("z", "ab")
    assert 0.0 < p < 0.25
