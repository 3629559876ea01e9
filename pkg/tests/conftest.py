import json

import numpy as np
import pytest

from weakslice.algebra import builtin_algebra, clifford_algebra, sample_slice_unit
from weakslice.fileio import fixture_path


@pytest.fixture(scope="session")
def H():
    return builtin_algebra("quaternion")


@pytest.fixture(scope="session")
def O():
    return builtin_algebra("octonion")


@pytest.fixture(scope="session")
def S():
    return builtin_algebra("sedenion")


@pytest.fixture(scope="session")
def R3():
    return clifford_algebra(3)


@pytest.fixture(scope="session")
def reference_table():
    with open(fixture_path("sedenion_reference.json")) as fh:
        return np.array(json.load(fh)["table"], dtype=float)


def hamilton(p, q):
    """Quaternion product from the textbook formula (independent of the table)."""
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return np.array([
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ])


def quat_poly(coeffs, q):
    """sum_k q^k a_k by Horner-free repeated Hamilton products."""
    out = np.zeros(4)
    power = np.array([1.0, 0, 0, 0])
    for a in coeffs:
        out += hamilton(power, a)
        power = hamilton(power, q)
    return out


def random_unit_imaginary(A, rng):
    v = rng.standard_normal(A.dim)
    v[0] = 0.0
    return A.element(v / np.linalg.norm(v))


def random_slice_unit(A, rng):
    """Pure imaginary unit vectors for H and O; Gauss-Newton refinement otherwise."""
    if A.name in ("complex", "quaternion", "octonion"):
        return random_unit_imaginary(A, rng)
    u = sample_slice_unit(A, rng)
    assert u is not None
    return u
