import pytest

from chebotarev.groupspec import parse_group


@pytest.fixture(scope="session")
def group_of():
    """Parse-and-cache group construction for test modules."""
    cache = {}

    def build(spec: str):
        if spec not in cache:
            cache[spec] = parse_group(spec).group
        return cache[spec]

    return build
