import pytest

from commons_engine import Engine, HouseConfig, SimClock
from commons_engine.timeutil import ts

T0 = ts(2025, 1, 1)

CHORES = [
    ("Wash Dishes", "dishes, drying rack, sink"),
    ("Clean Kitchen Floor", "sweep and mop"),
    ("Sweep Common Areas", "hall, stairs, landings"),
    ("Yardwork", "weeding and raking"),
]


def make_engine(start=T0):
    return Engine(clock=SimClock(start))


def make_house(engine, house="h1", residents=9, config=None, chores=CHORES, at=T0):
    engine.create_house(house, config or HouseConfig(), at=at, chores=chores)
    for i in range(residents):
        engine.add_resident(house, f"r{i}", at=at)
    return engine.houses[house]


@pytest.fixture
def engine():
    return make_engine()


@pytest.fixture
def house(engine):
    return make_house(engine)


def pass_proposal(engine, house, proposal_id, voters, at):
    """Cast upvotes from ``voters`` on an open proposal."""
    for voter in voters:
        engine.cast_ballot(house, proposal_id, voter, "up", at=at)
