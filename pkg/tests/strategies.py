"""Hypothesis strategies for random finite games"""
import numpy as np
from hypothesis import strategies as st
from igames.models.dtos import DEFAULT_LAYOUTS
from igames.models.entities import LongitudinalState, WorldState
from igames.services.vehicle_service import geometry_for


@st.composite
def bimatrix_tables(draw, min_size=3, max_size=5, max_cost=20):
    """Two integer cost tables of one random shape"""
    rows = draw(st.integers(min_size, max_size))
    cols = draw(st.integers(min_size, max_size))
    cells = st.lists(st.integers(0, max_cost), min_size=rows * cols, max_size=rows * cols)
    leader = np.array(draw(cells), dtype=float).reshape(rows, cols)
    follower = np.array(draw(cells), dtype=float).reshape(rows, cols)
    return [leader, follower]


@st.composite
def tabular_tables(draw, players=3, max_size=3, max_cost=10):
    """One integer cost table per player over a random product space"""
    shape = tuple(draw(st.integers(1, max_size)) for _ in range(players))
    size = int(np.prod(shape))
    cells = st.lists(st.integers(0, max_cost), min_size=size, max_size=size)
    return [np.array(draw(cells), dtype=float).reshape(shape) for _ in range(players)]


@st.composite
def rollout_worlds(draw, min_players=2, max_players=4, lane_offset=3.5):
    """Vehicles on distinct approaches, 20-60 m out, with speeds up to 10 m/s"""
    n = draw(st.integers(min_players, max_players))
    agents = tuple(
        LongitudinalState(z=-draw(st.floats(20.0, 60.0)), v=draw(st.floats(0.0, 10.0)))
        for _ in range(n)
    )
    geoms = [geometry_for(approach, lane_offset) for approach in DEFAULT_LAYOUTS[n]]
    return WorldState(agents=agents), geoms
