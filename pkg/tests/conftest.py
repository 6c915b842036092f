import random

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from graphvn import fixtures
from graphvn.sampling import random_graph

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def graphs(max_vertices=6, max_pairs=8, **kw):
    """Seeds mapped through the sampler, so failures shrink to a seed."""
    return st.integers(0, 2**32 - 1).map(
        lambda s: random_graph(random.Random(s), max_vertices=max_vertices, max_pairs=max_pairs, **kw))


FIXTURES = fixtures.NAMES
