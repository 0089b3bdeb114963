import pytest

from evoplan import briefcase_instance, fact
from evoplan.program import Call, Leaf


def tiny_bp_instance():
    """Two objects, one briefcase, three locations; goal: move o1 to l2."""
    return briefcase_instance(
        objects=("o1", "o2"),
        briefcases=("b1",),
        locations=("l1", "l2", "l3"),
        at={"o1": "l1", "o2": "l3", "b1": "l1"},
        goals=[fact("at", "o1", "l2")],
    )


@pytest.fixture
def bp():
    return tiny_bp_instance()


# The four worked programs: two random parents and their crossover children.
P1 = Call("take-out", (Call("put-in", (Leaf(1), Leaf(2))),))
P2 = Call("move-briefcase", (Call("take-out", (Leaf(2),)), Leaf(2)))
C1 = Call("take-out", (Call("take-out", (Leaf(2),)),))
C2 = Call("move-briefcase", (Call("put-in", (Leaf(1), Leaf(2))), Leaf(2)))
