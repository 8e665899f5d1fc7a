"""
Christoffel lattice paths and the snake graphs lying on them.

Coordinates are kept in half units (integers) so tiles of side 0.5 stay exact:
a tile with `x2=1, y2=0` has its south west corner at (0.5, 0).
"""

import math
import logging
from enum import Enum
from dataclasses import dataclass
from typing import Optional

from cf_core import ContinuedFraction, Marker, StructureError, as_cf, numerator

DEFAULT_TILE_LIMIT = 25
SVG_UNIT = 40
SVG_MARGIN = 20


class SizeLimitError(ValueError):
    pass


class Step(Enum):
    R = "R"
    U = "U"


@dataclass(frozen=True)
class RationalIndex:
    p: int
    q: int

    def __post_init__(self):
        if not 1 <= self.p < self.q:
            raise ValueError(f"index {self.p}/{self.q} needs 1 <= p < q")

    @classmethod
    def parse(cls, text):
        try:
            p, q = (int(v) for v in text.split("/"))
        except ValueError as e:
            raise ValueError(f"'{text}' is not of the form p/q") from e
        return cls(p, q)

    @property
    def g(self):
        return math.gcd(self.p, self.q)

    @property
    def coprime(self):
        return self.g == 1

    def __str__(self):
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class ChristoffelWord:
    letters: tuple

    def __str__(self):
        return "".join(s.value for s in self.letters)

    def points(self):
        """Lattice points visited, starting at the origin."""
        x = y = 0
        out = [(0, 0)]
        for s in self.letters:
            if s is Step.R:
                x += 1
            else:
                y += 1
            out.append((x, y))
        return out


def primitive_word(p, q):
    # letter i is U exactly when floor(i p / (p+q)) steps up
    n = p + q
    return tuple(Step.U if (i * p) // n > ((i - 1) * p) // n else Step.R
                 for i in range(1, n + 1))


def christoffel_word(idx: RationalIndex) -> ChristoffelWord:
    g = idx.g
    return ChristoffelWord(primitive_word(idx.p // g, idx.q // g) * g)


@dataclass(frozen=True)
class Tile:
    x2: int
    y2: int

    @property
    def sw(self):
        return (self.x2 / 2, self.y2 / 2)

    def corners(self):
        x, y = self.x2, self.y2
        return ((x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1))

    def sides(self):
        x, y = self.x2, self.y2
        return (
            frozenset({(x, y), (x + 1, y)}),
            frozenset({(x, y + 1), (x + 1, y + 1)}),
            frozenset({(x, y), (x, y + 1)}),
            frozenset({(x + 1, y), (x + 1, y + 1)}),
        )


@dataclass(frozen=True)
class SnakeGraph:
    tiles: tuple
    moves: tuple
    shaded: tuple
    index: Optional[RationalIndex] = None

    def __len__(self):
        return len(self.tiles)

    def shaded_positions(self):
        """1-based positions of the shaded tiles."""
        return [pos + 1 for pos, s in enumerate(self.shaded) if s]

    def gaps(self):
        """Unshaded tile counts between consecutive shaded tiles."""
        marks = self.shaded_positions()
        return [b - a - 1 for a, b in zip(marks, marks[1:])]

    def vertices(self):
        return sorted({c for t in self.tiles for c in t.corners()})

    def edges(self):
        return sorted({e for t in self.tiles for e in t.sides()}, key=sorted)

    def to_dict(self):
        return {
            "tiles": [{"x": t.sw[0], "y": t.sw[1], "shaded": s} for t, s in zip(self.tiles, self.shaded)],
            "moves": "".join(m.value for m in self.moves),
            "cf": list(cf_from_snake(self).entries),
        }


def shade(moves):
    n = len(moves) + 1
    shaded = [False] * n
    shaded[0] = shaded[-1] = True
    for pos in range(1, n - 1):
        if moves[pos - 1] is not moves[pos]:
            shaded[pos] = True
    return tuple(shaded)


def build_snake(idx: RationalIndex) -> SnakeGraph:
    word = christoffel_word(idx).letters
    moves = tuple(s for s in word[1:-1] for _ in range(2))
    tiles = [Tile(1, 0)]
    for m in moves:
        last = tiles[-1]
        tiles.append(Tile(last.x2 + 1, last.y2) if m is Step.R else Tile(last.x2, last.y2 + 1))
    g = SnakeGraph(tuple(tiles), moves, shade(moves), idx)
    logging.debug(f"snake {idx}: {len(g)} tiles, shaded {g.shaded_positions()}")
    return g


def cf_from_snake(g: SnakeGraph) -> ContinuedFraction:
    # k unshaded tiles in a row have k - 1 interior edges between them
    entries = [2]
    for gap in g.gaps():
        entries.extend([1] * (gap - 1))
        entries.append(2)
    return ContinuedFraction(tuple(entries))


def markov_number(idx: RationalIndex) -> int:
    return numerator(cf_from_snake(build_snake(idx)))


@dataclass(frozen=True)
class MatchingCount:
    count: int


def count_matchings_bruteforce(g: SnakeGraph, limit: int = DEFAULT_TILE_LIMIT) -> MatchingCount:
    """Count perfect matchings by exhaustive backtracking over the tile-side edges."""
    if len(g) > limit:
        raise SizeLimitError(f"{len(g)} tiles exceeds the brute-force limit of {limit}")
    vertices = g.vertices()
    adjacent = {v: [] for v in vertices}
    for e in g.edges():
        a, b = sorted(e)
        adjacent[a].append(b)
        adjacent[b].append(a)
    matched = set()

    def extend(pos):
        while pos < len(vertices) and vertices[pos] in matched:
            pos += 1
        if pos == len(vertices):
            return 1
        v = vertices[pos]
        total = 0
        matched.add(v)
        for w in adjacent[v]:
            if w not in matched:
                matched.add(w)
                total += extend(pos + 1)
                matched.discard(w)
        matched.discard(v)
        return total

    return MatchingCount(extend(0))


def replaceable_entries(cf) -> tuple:
    """Split entries in {1,2} into markers, pairing 1s greedily from the left."""
    entries = as_cf(cf).entries
    markers = []
    pos = 0
    while pos < len(entries):
        a = entries[pos]
        if a == 2:
            markers.append(Marker.TWO)
            pos += 1
        elif a == 1 and pos + 1 < len(entries) and entries[pos + 1] == 1:
            markers.append(Marker.ONEONE)
            pos += 2
        elif a == 1:
            raise StructureError(f"unpaired 1 at position {pos} in {list(entries)}")
        else:
            raise StructureError(f"entry {a} at position {pos} is not replaceable")
    return tuple(markers)


# Rendering
def box(g: SnakeGraph):
    if g.index is not None:
        return g.index.q, g.index.p
    width = max(t.x2 for t in g.tiles) // 2 + 1
    height = max(t.y2 for t in g.tiles) // 2 + 1
    return width, height


def crosses_diagonal(x2, y2, p, q):
    values = [q * cy - p * cx for cx, cy in ((x2, y2), (x2 + 1, y2), (x2, y2 + 1), (x2 + 1, y2 + 1))]
    return min(values) < 0 < max(values)


def render_ascii(g: SnakeGraph) -> str:
    q, p = box(g)
    tiles = dict(zip(g.tiles, g.shaded))
    rows = []
    for y2 in reversed(range(2 * p)):
        row = []
        for x2 in range(2 * q):
            t = Tile(x2, y2)
            if t in tiles:
                row.append("#" if tiles[t] else "o")
            elif g.index is not None and crosses_diagonal(x2, y2, p, q):
                row.append("/")
            else:
                row.append(".")
        rows.append("".join(row))
    return "\n".join(rows) + "\n"


SVG_HEADER = """\
<?xml version="1.0" standalone="no"?>
<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" "http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">
<svg width="{width}" height="{height}" viewBox="0 0 {width} {height}" version="1.1" xmlns="http://www.w3.org/2000/svg">
"""

SVG_FOOTER = "</svg>\n"


def render_svg(g: SnakeGraph) -> str:
    q, p = box(g)
    half = SVG_UNIT // 2
    width = q * SVG_UNIT + 2 * SVG_MARGIN
    height = p * SVG_UNIT + 2 * SVG_MARGIN

    def px(x2):
        return SVG_MARGIN + x2 * half

    def py(y2):
        return SVG_MARGIN + (2 * p - y2) * half

    out = [SVG_HEADER.format(width=width, height=height)]
    for x in range(q + 1):
        out.append(f'<line class="grid" x1="{px(2 * x)}" y1="{py(0)}" x2="{px(2 * x)}" y2="{py(2 * p)}" '
                   f'style="stroke:#cccccc;stroke-width:1"/>\n')
    for y in range(p + 1):
        out.append(f'<line class="grid" x1="{px(0)}" y1="{py(2 * y)}" x2="{px(2 * q)}" y2="{py(2 * y)}" '
                   f'style="stroke:#cccccc;stroke-width:1"/>\n')
    for t, s in zip(g.tiles, g.shaded):
        fill = "#3050c0" if s else "none"
        cls = "tile shaded" if s else "tile"
        out.append(f'<rect class="{cls}" x="{px(t.x2)}" y="{py(t.y2 + 1)}" width="{half}" height="{half}" '
                   f'style="fill:{fill};stroke:#3050c0;stroke-width:1"/>\n')
    if g.index is not None:
        out.append(f'<line class="diagonal" x1="{px(0)}" y1="{py(0)}" x2="{px(2 * q)}" y2="{py(2 * p)}" '
                   f'style="stroke:#000000;stroke-width:1"/>\n')
        points = " ".join(f"{px(2 * x)},{py(2 * y)}" for x, y in christoffel_word(g.index).points())
        out.append(f'<polyline class="path" points="{points}" style="fill:none;stroke:#c03030;stroke-width:3"/>\n')
    out.append(SVG_FOOTER)
    return "".join(out)


RENDERERS = {
    "ascii": render_ascii,
    "svg": render_svg,
}


def render(g: SnakeGraph, fmt: str = "ascii") -> str:
    try:
        renderer = RENDERERS[fmt]
    except KeyError:
        raise ValueError(f"unknown format '{fmt}', expected one of {sorted(RENDERERS)}") from None
    return renderer(g)
