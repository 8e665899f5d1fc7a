"""Markov tree, Farey tree and the index map p/q -> m_{p/q}."""

import math
import logging
from enum import Enum
from fractions import Fraction
from dataclasses import dataclass
from typing import Optional


class Side(Enum):
    L = "L"
    R = "R"


class TreeKind(Enum):
    MARKOV = "markov"
    FAREY = "farey"


@dataclass(frozen=True)
class MarkovTriple:
    x: int
    y: int
    z: int

    def is_valid(self):
        return is_markov_triple(self.x, self.y, self.z)

    def as_tuple(self):
        return (self.x, self.y, self.z)

    def to_dict(self):
        return [str(v) for v in self.as_tuple()]


def mediant(a: Fraction, c: Fraction) -> Fraction:
    return Fraction(a.numerator + c.numerator, a.denominator + c.denominator)


@dataclass(frozen=True)
class FareyTriple:
    left: Fraction
    mid: Fraction
    right: Fraction

    def is_valid(self):
        a, b = self.left.numerator, self.left.denominator
        c, d = self.right.numerator, self.right.denominator
        return self.mid == mediant(self.left, self.right) and b * c - a * d == 1

    def as_tuple(self):
        return (self.left, self.mid, self.right)

    def to_dict(self):
        return [f"{f.numerator}/{f.denominator}" for f in self.as_tuple()]


MARKOV_ROOT = MarkovTriple(1, 5, 2)
FAREY_ROOT = FareyTriple(Fraction(0, 1), Fraction(1, 2), Fraction(1, 1))

# m_{0/1} and m_{1/1} come from the singular triples (1,1,1) and (1,2,1)
ENDPOINT_VALUES = {(0, 1): 1, (1, 1): 2}


def is_markov_triple(x, y, z) -> bool:
    if min(x, y, z) <= 0:
        return False
    return x * x + y * y + z * z == 3 * x * y * z


def markov_branch(t: MarkovTriple, side: Side) -> MarkovTriple:
    x, y, z = t.as_tuple()
    if side is Side.L:
        return MarkovTriple(x, 3 * x * y - z, y)
    return MarkovTriple(y, 3 * y * z - x, z)


def farey_branch(t: FareyTriple, side: Side) -> FareyTriple:
    if side is Side.L:
        return FareyTriple(t.left, mediant(t.left, t.mid), t.mid)
    return FareyTriple(t.mid, mediant(t.mid, t.right), t.right)


def check_index(p, q):
    if not 0 < p < q:
        raise ValueError(f"{p}/{q} is not a fraction strictly between 0 and 1")
    if math.gcd(p, q) != 1:
        raise ValueError(f"{p}/{q} is not reduced")


def stern_brocot_path(p: int, q: int) -> tuple:
    """Locate p/q in the Farey tree by mediant bisection."""
    check_index(p, q)
    target = Fraction(p, q)
    node = FAREY_ROOT
    path = []
    while node.mid != target:
        side = Side.L if target < node.mid else Side.R
        path.append(side)
        node = farey_branch(node, side)
    return tuple(path)


def path_to_str(path):
    return "".join(side.value for side in path)


def markov_number_via_tree(p: int, q: int) -> int:
    if (p, q) in ENDPOINT_VALUES:
        return ENDPOINT_VALUES[(p, q)]
    node = MARKOV_ROOT
    for side in stern_brocot_path(p, q):
        node = markov_branch(node, side)
    return node.y


@dataclass
class TreeNode:
    triple: object
    path: tuple = ()
    left: Optional["TreeNode"] = None
    right: Optional["TreeNode"] = None

    def walk(self):
        yield self
        for child in (self.left, self.right):
            if child is not None:
                yield from child.walk()

    def level(self, depth):
        return [node for node in self.walk() if len(node.path) == depth]

    def to_dict(self):
        out = {"path": path_to_str(self.path), "triple": self.triple.to_dict()}
        if self.left is not None:
            out["left"] = self.left.to_dict()
            out["right"] = self.right.to_dict()
        return out


def grow(triple, path, depth, branch):
    node = TreeNode(triple, path)
    if depth > 0:
        node.left = grow(branch(triple, Side.L), path + (Side.L,), depth - 1, branch)
        node.right = grow(branch(triple, Side.R), path + (Side.R,), depth - 1, branch)
    return node


def generate_tree(kind, depth: int) -> TreeNode:
    kind = TreeKind(kind)
    if depth < 0:
        raise ValueError(f"depth must be non-negative, got {depth}")
    if kind is TreeKind.MARKOV:
        root = grow(MARKOV_ROOT, (), depth, markov_branch)
    else:
        root = grow(FAREY_ROOT, (), depth, farey_branch)
    logging.debug(f"generated {kind.value} tree of depth {depth}")
    return root
