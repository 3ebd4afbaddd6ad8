import itertools

import pytest

from cylpart import Profile


def all_profiles(max_rank: int, max_level: int) -> list[Profile]:
    """Every profile with rank <= max_rank and 1 <= level <= max_level."""
    out = []
    for r in range(1, max_rank + 1):
        for level in range(1, max_level + 1):
            for parts in itertools.product(range(level + 1), repeat=r):
                if sum(parts) == level:
                    out.append(Profile(parts))
    return out


@pytest.fixture(scope="session")
def small_profiles() -> list[Profile]:
    return all_profiles(3, 3)
