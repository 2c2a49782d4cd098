"""Test for the seeded train/test split"""
import logging
from collections import Counter

import pytest

from herox.dataset import split_corpus


def _records(per_label, labels="abc"):
    return [(label, i) for label in labels for i in range(per_label)]


def _label(r):
    return r[0]


def test_eight_two_per_label():
    train, test = split_corpus(_records(10), 0.8, seed=0, label_of=_label)
    assert Counter(r[0] for r in train) == {"a": 8, "b": 8, "c": 8}
    assert Counter(r[0] for r in test) == {"a": 2, "b": 2, "c": 2}
    assert sorted(train + test) == sorted(_records(10))


def test_same_seed_same_split():
    first = split_corpus(_records(10), 0.8, seed=4, label_of=_label)
    again = split_corpus(_records(10), 0.8, seed=4, label_of=_label)
    assert first == again


def test_seed_changes_split():
    splits = {tuple(split_corpus(_records(20), 0.5, seed=s, label_of=_label)[1]) for s in range(5)}
    assert len(splits) > 1


def test_input_order_kept():
    records = _records(10)
    train, test = split_corpus(records, 0.7, seed=1, label_of=_label)
    assert train == [r for r in records if r in train]
    assert test == [r for r in records if r in test]


def test_both_sides_nonempty():
    train, test = split_corpus(_records(2), 0.99, seed=0, label_of=_label)
    assert Counter(r[0] for r in test) == {"a": 1, "b": 1, "c": 1}


def test_large_split_ratio():
    records = _records(1000, labels="a")
    train, test = split_corpus(records, 100_000 / 134_659, seed=0, label_of=_label)
    assert len(train) == 743 and len(test) == 257


def test_singleton_label_goes_to_train(caplog):
    records = _records(5, labels="ab") + [("z", 0)]
    with caplog.at_level(logging.WARNING):
        train, test = split_corpus(records, 0.8, seed=0, label_of=_label)
    assert ("z", 0) in train
    assert "'z'" in caplog.text


def test_split_arguments():
    with pytest.raises(ValueError):
        split_corpus([], 0.8)
    with pytest.raises(ValueError):
        split_corpus(_records(3), 1.0, label_of=_label)
