"""
Exact continued-fraction arithmetic over non-negative integer entries.

Numerators are continuants computed with Python integers, so there is no
overflow at any size. Zero entries are only allowed as 0,0 placeholders.
"""

import logging
from enum import Enum
from fractions import Fraction
from dataclasses import dataclass
from typing import NamedTuple, Sequence

ZERO_PAIR = (0, 0)


class StructureError(ValueError):
    pass


class DomainError(ValueError):
    pass


class Marker(Enum):
    TWO = (2,)
    ONEONE = (1, 1)

    @property
    def entries(self):
        return self.value

    def flip(self):
        return Marker.ONEONE if self is Marker.TWO else Marker.TWO

    def __str__(self):
        return ",".join(str(a) for a in self.value)


def as_entries(values) -> tuple:
    entries = tuple(values)
    for pos, a in enumerate(entries):
        if isinstance(a, bool) or not isinstance(a, int):
            raise StructureError(f"entry {a!r} at position {pos} is not an integer")
    return entries


def check_zero_runs(entries):
    """Raise StructureError unless every run of zeros has even length."""
    run = 0
    for pos, a in enumerate(entries):
        if a < 0:
            raise StructureError(f"negative entry {a} at position {pos}")
        if a == 0:
            run += 1
            continue
        if run % 2:
            raise StructureError(f"isolated zero before position {pos} in {list(entries)}")
        run = 0
    if run % 2:
        raise StructureError(f"isolated zero at the end of {list(entries)}")


@dataclass(frozen=True)
class ContinuedFraction:
    entries: tuple

    def __post_init__(self):
        entries = as_entries(self.entries)
        check_zero_runs(entries)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def parse(cls, text):
        text = text.strip().strip("[]")
        if text == "":
            return cls(())
        try:
            return cls(tuple(int(a) for a in text.split(",")))
        except ValueError as e:
            raise StructureError(f"cannot parse continued fraction '{text}': {e}") from e

    @property
    def strict(self):
        return all(a > 0 for a in self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __add__(self, other):
        if isinstance(other, ContinuedFraction):
            other = other.entries
        return ContinuedFraction(self.entries + tuple(other))

    def __str__(self):
        return "[" + ",".join(str(a) for a in self.entries) + "]"


def as_cf(cf):
    if isinstance(cf, ContinuedFraction):
        return cf
    return ContinuedFraction(tuple(cf))


# Continuants
def continuant(entries: Sequence[int]) -> int:
    """Tail recursion N[a_1..a_n] = a_n N[a_1..a_{n-1}] + N[a_1..a_{n-2}], N[ ] = 1."""
    prev, cur = 0, 1
    for a in entries:
        prev, cur = cur, a * cur + prev
    return cur


def continuant_head(entries: Sequence[int]) -> int:
    """Head recursion N[a_1..a_n] = a_1 N[a_2..a_n] + N[a_3..a_n]."""
    nxt, cur = 0, 1
    for a in reversed(entries):
        nxt, cur = cur, a * cur + nxt
    return cur


def head_deleted(entries):
    return tuple(entries)[1:]


def tail_deleted(entries):
    return tuple(entries)[:-1]


def strip_zero_pairs(cf) -> ContinuedFraction:
    cf = as_cf(cf)
    return ContinuedFraction(tuple(a for a in cf.entries if a != 0))


def numerator(cf) -> int:
    return continuant(strip_zero_pairs(cf).entries)


def numerator_from_head(cf) -> int:
    return continuant_head(strip_zero_pairs(cf).entries)


def zero_pair_reversal_numerator(cf) -> int:
    """N[a_1..a_n,0,0] computed by its definition N[0,0,a_n..a_1]."""
    entries = as_cf(cf).entries
    if entries[-2:] != ZERO_PAIR:
        raise DomainError(f"{list(entries)} does not end with a zero pair")
    return numerator(ZERO_PAIR + tuple(reversed(entries[:-2])))


def convergent(entries: Sequence[int]) -> Fraction:
    """Value of a raw sequence as the ratio of its continuants, without normalizing."""
    entries = tuple(entries)
    if not entries:
        raise DomainError("an empty sequence has no value")
    den = continuant(head_deleted(entries))
    if den == 0:
        raise DomainError(f"{list(entries)} has a zero denominator")
    return Fraction(continuant(entries), den)


def evaluate(cf) -> Fraction:
    stripped = strip_zero_pairs(cf)
    if not stripped.entries:
        raise DomainError(f"{as_cf(cf)} is empty after removing zero pairs")
    num = continuant(stripped.entries)
    den = continuant(head_deleted(stripped.entries))
    # consecutive continuants are coprime, so the Fraction is already reduced
    return Fraction(num, den)


def reverse(cf) -> ContinuedFraction:
    return ContinuedFraction(tuple(reversed(as_cf(cf).entries)))


def graft_numerator(cf, i: int) -> int:
    entries = as_cf(cf).entries
    if not as_cf(cf).strict:
        raise DomainError(f"grafting needs a strict continued fraction, got {list(entries)}")
    if not 1 <= i < len(entries):
        raise DomainError(f"split index {i} out of range for length {len(entries)}")
    return (continuant(entries[:i]) * continuant(entries[i:])
            + continuant(entries[:i - 1]) * continuant(entries[i + 1:]))


class TailTerms(NamedTuple):
    n2: int
    n1: int
    n0: int
    nminus: int


def tail_identity_terms(cf) -> TailTerms:
    cf = as_cf(cf)
    if not cf.entries:
        raise DomainError("tail identities need a nonempty continued fraction")
    if not cf.strict:
        raise DomainError(f"{cf} is not strict")
    return TailTerms(
        n2=continuant(cf.entries + (2,)),
        n1=continuant(cf.entries + (1,)),
        n0=continuant(cf.entries),
        nminus=continuant(tail_deleted(cf.entries)),
    )


# Segments and replacements
def check_segment(mu):
    mu = as_entries(mu)
    if mu == ZERO_PAIR:
        return mu
    if not mu:
        raise StructureError("a segment must be nonempty or the 0,0 placeholder")
    if any(a <= 0 for a in mu):
        raise StructureError(f"segment {list(mu)} must be positive or exactly 0,0")
    return mu


def markers_to_entries(markers):
    out = []
    for m in markers:
        out.extend(m.entries)
    return tuple(out)


def interleave(mus, alphas, trailing=()):
    out = []
    for pos, mu in enumerate(mus):
        if pos:
            out.extend(alphas[pos - 1].entries)
        out.extend(mu)
    out.extend(trailing)
    return tuple(out)


@dataclass(frozen=True)
class SegmentedCF:
    mus: tuple
    alphas: tuple

    def __post_init__(self):
        mus = tuple(check_segment(mu) for mu in self.mus)
        alphas = tuple(Marker[a] if isinstance(a, str) else a for a in self.alphas)
        if not mus:
            raise StructureError("a segmented continued fraction needs at least one segment")
        if len(alphas) != len(mus) - 1:
            raise StructureError(f"{len(mus)} segments need {len(mus) - 1} markers, got {len(alphas)}")
        object.__setattr__(self, "mus", mus)
        object.__setattr__(self, "alphas", alphas)

    @property
    def k(self):
        return len(self.mus)

    def flatten(self, trailing=()) -> tuple:
        return interleave(self.mus, self.alphas, trailing)

    def to_cf(self, trailing=()) -> ContinuedFraction:
        return ContinuedFraction(self.flatten(trailing))

    def flipped(self):
        return SegmentedCF(self.mus, tuple(a.flip() for a in self.alphas))

    def with_alphas(self, alphas):
        return SegmentedCF(self.mus, tuple(alphas))

    def to_dict(self):
        return {
            "mus": [list(mu) for mu in self.mus],
            "alphas": [a.name for a in self.alphas],
        }


def replace_at(seg: SegmentedCF, j: int) -> SegmentedCF:
    if not 0 <= j < len(seg.alphas):
        raise DomainError(f"marker index {j} out of range for {len(seg.alphas)} markers")
    alphas = list(seg.alphas)
    alphas[j] = alphas[j].flip()
    return seg.with_alphas(alphas)


def replacement_difference(mu1, mu2) -> int:
    """N[mu1^-] N[^-mu2]; a placeholder deletes to [0], whose numerator is 0."""
    mu1 = check_segment(mu1)
    mu2 = check_segment(mu2)
    return continuant(tail_deleted(mu1)) * continuant(head_deleted(mu2))


@dataclass(frozen=True)
class ReplacementSplit:
    delta: tuple
    epsilon: tuple

    def term(self):
        return continuant(tail_deleted(self.delta)) * continuant(head_deleted(self.epsilon))


def replacement_splits(mus) -> list:
    """delta_j = mu_1,2,..,mu_j and epsilon_j = mu_{j+1},1,1,..,mu_k for j = 1..k-1."""
    mus = tuple(check_segment(mu) for mu in mus)
    splits = []
    for j in range(1, len(mus)):
        delta = interleave(mus[:j], [Marker.TWO] * (j - 1))
        epsilon = interleave(mus[j:], [Marker.ONEONE] * (len(mus) - j - 1))
        splits.append(ReplacementSplit(delta, epsilon))
    return splits


def align_markers(larger, smaller) -> SegmentedCF:
    """
    Build the segmented form comparing N[larger] with N[smaller].

    `larger` must be one marker longer than `smaller` and end with TWO; that
    trailing TWO is the appended 2 and is not part of the result.
    """
    larger = list(larger)
    smaller = list(smaller)
    if len(larger) != len(smaller) + 1:
        raise DomainError(f"expected {len(smaller) + 1} markers, got {len(larger)}")
    if larger[-1] is not Marker.TWO:
        raise DomainError("the larger sequence must end with a 2")
    mus = []
    alphas = []
    run = []
    for big, small in zip(larger[:-1], smaller):
        if big is small:
            run.append(big)
            continue
        mus.append(markers_to_entries(run) if run else ZERO_PAIR)
        alphas.append(big)
        run = []
    mus.append(markers_to_entries(run) if run else ZERO_PAIR)
    seg = SegmentedCF(tuple(mus), tuple(alphas))
    logging.debug(f"aligned {len(smaller)} markers into {seg.k} segments")
    return seg
