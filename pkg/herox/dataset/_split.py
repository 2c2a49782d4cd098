import logging
from collections import defaultdict
from typing import Callable, List, Sequence, Tuple, TypeVar

import jax.random as jrandom
import numpy as np


logger = logging.getLogger(__name__)

T = TypeVar("T")


def split_corpus(
    records: Sequence[T],
    train_fraction: float = 0.8,
    seed: int = 0,
    label_of: Callable[[T], str] = lambda r: r.label,
) -> Tuple[List[T], List[T]]:
    """Seeded train/test split, stratified by label.

    Each label's records are permuted with a key folded from `seed` and the
    label's rank, and `round(train_fraction * n)` of them (at least one of
    each side) go to train. A label with fewer than two records goes to
    train whole, with a warning. Both sides keep the input order.

    Args:
        records (Sequence): Records to split.
        train_fraction (float, optional): Share of each label for training. Defaults to 0.8.
        seed (int, optional): Split seed. Defaults to 0.
        label_of (Callable, optional): Label of a record. Defaults to `r.label`.

    Returns:
        Tuple[List, List]: Train and test records.

    Example:
        >>> train, test = split_corpus([("a", i) for i in range(10)], 0.8, label_of=lambda r: r[0])
        >>> len(train), len(test)
        (8, 2)
    """
    if len(records) == 0:
        raise ValueError("split_corpus needs at least one record")
    if not 0.0 < train_fraction < 1.0:
        raise ValueError(f"train_fraction must be in (0, 1), got {train_fraction}")
    groups = defaultdict(list)
    for i, record in enumerate(records):
        groups[str(label_of(record))].append(i)

    key = jrandom.PRNGKey(seed)
    train_idx = []
    for rank, label in enumerate(sorted(groups)):
        idx = groups[label]
        if len(idx) < 2:
            logger.warning("label %r has %d record(s); all go to train", label, len(idx))
            train_idx += idx
            continue
        n_train = min(max(int(np.floor(train_fraction * len(idx) + 0.5)), 1), len(idx) - 1)
        perm = np.asarray(jrandom.permutation(jrandom.fold_in(key, rank), len(idx)))
        train_idx += [idx[i] for i in perm[:n_train]]

    chosen = set(train_idx)
    train = [records[i] for i in range(len(records)) if i in chosen]
    test = [records[i] for i in range(len(records)) if i not in chosen]
    return train, test
