import numpy as np
import pytest

from srelhom.rings import (
    direct_product,
    mult_closure,
    prime_field,
    truncated_polynomial,
)
from srelhom.modules import (
    free_map_from_generator_images,
    free_module,
    regular_module,
    subquotient,
)


def product_ring():
    """F_2 x F_2[t]/(t^2) on basis e1, e2, f with f = (0, t)."""
    return direct_product(prime_field(2), truncated_polynomial(2, 2),
                          labels=["e1", "e2", "f"])


def quotient_module(ring, relation_vectors):
    """R / (the submodule generated by the given ring elements)."""
    if not relation_vectors:
        return regular_module(ring)
    free = free_module(ring, len(relation_vectors))
    images = np.array(relation_vectors, dtype=np.int64).T
    rel = free_map_from_generator_images(free, regular_module(ring), images)
    mod, _ = subquotient(rel, "cokernel")
    return mod


@pytest.fixture
def ring2():
    return product_ring()


@pytest.fixture
def s_e1(ring2):
    return mult_closure(ring2, [ring2.element([1, 0, 0])])


@pytest.fixture
def s_one(ring2):
    return mult_closure(ring2, [])


@pytest.fixture
def m2(ring2):
    # R/(e1, f): only e2 survives, e1 and f act as zero
    return quotient_module(ring2, [[1, 0, 0], [0, 0, 1]])


@pytest.fixture
def t2():
    return truncated_polynomial(2, 2)
