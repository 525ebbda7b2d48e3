import numpy as np
import pytest

from reslab import model1d, pv


@pytest.fixture(scope="session")
def p1():
    """Canonical test profile: vanishing point 1, order 1, centered Gaussian.

    Closed-form constants (confirmed by quadrature in test_model1d):
    scale^2 = 2/(3 sqrt(pi)), gamma(|u|^2, 1) = -2/3, alpha0 = 3/2,
    phi = scale * exp(-x^2/2), ||phi||^2 = 2/3.
    """
    return model1d.build_hermite_profile(1.0, 1, 0.0)


@pytest.fixture(scope="session")
def p1_order2():
    """Order-2 vanishing profile; alpha0 = 19/10, ||phi||^2 = 6/19."""
    return model1d.build_hermite_profile(1.0, 2, 0.0)


@pytest.fixture(scope="session")
def gaussian_state(p1):
    """A generic normalized Gaussian test state on the P1 grid."""
    g = p1.grid
    raw = pv.SampledFunction.from_callable(g, lambda x: np.exp(-(x - 0.5) ** 2))
    return pv.SampledFunction(g, raw.values / raw.norm_l2())
