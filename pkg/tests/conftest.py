"""Shared hypothesis profile and strategies for exact-arithmetic tests."""

from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from orbitcert.scalars import Tower

# Exact arithmetic is deterministic but not uniformly fast; wall-clock
# deadlines only add flakiness on loaded machines.
settings.register_profile(
    "exact",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")


# Small rationals keep denominators (and therefore rref pivots) tame.
rationals = st.fractions(min_value=Fraction(-6), max_value=Fraction(6),
                         max_denominator=4)
nonzero_rationals = rationals.filter(lambda x: x != 0)


def gauss(tower: Tower):
    """Strategy for scalars in the rational(i) base of ``tower``."""
    return st.builds(lambda re, im: tower.scalar(re, im),
                     rationals, rationals)


def gauss_nonzero(tower: Tower):
    return gauss(tower).filter(lambda s: not s.is_zero())


def vectors(tower: Tower, n: int):
    return st.lists(gauss(tower), min_size=n, max_size=n)


def square_matrices(tower: Tower, n: int):
    from orbitcert.linalg import Matrix

    return st.builds(lambda rows: Matrix.from_rows(tower, rows),
                     st.lists(vectors(tower, n), min_size=n, max_size=n))
