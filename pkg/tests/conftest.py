from itertools import product

import pytest

from sktgc.core import Code


def rows_of(code: Code) -> list[str]:
    """Codewords as digit strings, leftmost symbol first."""
    return ["".join(str(s) for s in code.symbols(i)) for i in range(len(code))]


def all_words(m: int, n: int) -> set[tuple[int, ...]]:
    return set(product(range(m), repeat=n))


def word_set(code: Code) -> set[tuple[int, ...]]:
    return {code.symbols(i) for i in range(len(code))}


@pytest.fixture(scope="session")
def odd_base():
    from sktgc.binary import odd_base
    return odd_base()


@pytest.fixture(scope="session")
def even_base():
    from sktgc.binary import even_base
    return even_base()
