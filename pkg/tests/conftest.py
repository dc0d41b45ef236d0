import pytest
from hypothesis import HealthCheck, settings

from partialskew import instances as inst
from partialskew.groups import cyclic_group

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def z2():
    G = cyclic_group(2)
    g = [h for h in G.elements() if not h.is_identity()][0]
    return G, g


@pytest.fixture
def swap():
    return inst.z2_swap()


@pytest.fixture
def shift():
    return inst.z_shift()
