"""Program trees: immutable nodes, traversal, and subtree surgery.

Leaves are terminal indices or arity-0 operators; internal nodes apply an
operator to child subtrees. Every node evaluates to a terminal index, so any
subtree is a valid argument anywhere (the closure property crossover relies
on).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

# Implicit sequencing combinator injected for domains whose operators are all
# arity-0; executes children left-to-right, yields the last child's value, and
# never appears in plan traces.
SEQ = "seq"


@dataclass(frozen=True)
class Leaf:
    index: int  # terminal value in 1..tmap.size


@dataclass(frozen=True)
class Call:
    op: str
    args: tuple["Node", ...] = ()


Node = Union[Leaf, Call]


def node_count(node: Node) -> int:
    if isinstance(node, Leaf):
        return 1
    return 1 + sum(node_count(a) for a in node.args)


def tree_depth(node: Node) -> int:
    if isinstance(node, Leaf) or not node.args:
        return 1
    return 1 + max(tree_depth(a) for a in node.args)


def iter_nodes(node: Node) -> Iterator[Node]:
    """Preorder traversal; node i of this sequence is 'subtree index i'."""
    stack = [node]
    while stack:
        n = stack.pop()
        yield n
        if isinstance(n, Call):
            stack.extend(reversed(n.args))


def subtree_at(node: Node, index: int) -> Node:
    for i, n in enumerate(iter_nodes(node)):
        if i == index:
            return n
    raise IndexError(f"subtree index {index} out of range")


def replace_at(node: Node, index: int, replacement: Node) -> Node:
    """Rebuild the tree with the preorder-``index`` subtree swapped out."""
    remaining, out = _replace(node, index, replacement)
    if remaining >= 0:
        raise IndexError(f"subtree index {index} out of range")
    return out


def _replace(node: Node, index: int, replacement: Node) -> tuple[int, Node]:
    if index == 0:
        return -1, replacement
    if isinstance(node, Leaf):
        return index - 1, node
    remaining = index - 1
    new_args = list(node.args)
    for i, arg in enumerate(node.args):
        remaining, out = _replace(arg, remaining, replacement)
        if remaining < 0:
            new_args[i] = out
            return -1, Call(node.op, tuple(new_args))
    return remaining, node


def to_text(node: Node) -> str:
    """Lisp-style rendering, e.g. ``(take-out (put-in (t1) (t2)))``."""
    if isinstance(node, Leaf):
        return f"(t{node.index})"
    if not node.args:
        return f"({node.op})"
    return f"({node.op} {' '.join(to_text(a) for a in node.args)})"
