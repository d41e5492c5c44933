"""Shared generators for the test suite."""

import numpy as np
import pytest

from finegames import (
    JointDistribution,
    MarginalConvention,
    MarginalSet,
    PureState,
    marginals_from_joint,
)


def random_pure_state(rng: np.random.Generator) -> PureState:
    """Haar-like draw: complex normal amplitudes, normalized."""
    amps = rng.normal(size=8) + 1j * rng.normal(size=8)
    return PureState(amps / np.linalg.norm(amps))


def random_joint(rng: np.random.Generator) -> JointDistribution:
    weights = rng.dirichlet(np.ones(8))
    return JointDistribution(weights)


def random_conjunction_set(rng: np.random.Generator) -> MarginalSet:
    """Free draw respecting only the pairwise consistency bounds.

    Unlike marginals of an actual joint distribution, these sets may
    fail the existence inequalities, which is the point: they exercise
    both verdicts.
    """
    lam, mu, nu = rng.uniform(0.0, 1.0, 3)
    p_ab = rng.uniform(max(0.0, lam + mu - 1.0), min(lam, mu))
    p_bc = rng.uniform(max(0.0, mu + nu - 1.0), min(mu, nu))
    p_ac = rng.uniform(max(0.0, lam + nu - 1.0), min(lam, nu))
    xi = rng.uniform(0.0, min(p_ab, p_bc, p_ac))
    return MarginalSet(lam, mu, nu, p_ab, p_bc, p_ac, xi, MarginalConvention.CONJUNCTION)


def conjunction_set_of_joint(rng: np.random.Generator) -> MarginalSet:
    return marginals_from_joint(random_joint(rng), MarginalConvention.CONJUNCTION)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)
