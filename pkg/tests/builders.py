"""Short constructors for instances used across the tests."""
from path_coloring.models import DPEDInstance, LCDInstance, PathTopology


def dped(lengths, c, d, demands, precoloring=None) -> DPEDInstance:
    return DPEDInstance(
        topology=PathTopology(path_lengths=tuple(lengths)),
        num_colors=c,
        d=d,
        precoloring=precoloring or {},
        demands=tuple(demands) if demands is not None else None,
    )


def lcd(lengths, c, lists, demands=None, d=1) -> LCDInstance:
    return LCDInstance(
        topology=PathTopology(path_lengths=tuple(lengths)),
        num_colors=c,
        lists=tuple(frozenset(allowed) for allowed in lists),
        demands=tuple(demands) if demands is not None else None,
        d=d,
    )
