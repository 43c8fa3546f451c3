"""
States, cells and walls of the phase-space decomposition
"""

from dataclasses import dataclass
from enum import Enum, IntEnum
from itertools import product
from typing import Iterator, Optional, Tuple

# Encoded level vector in node order. S levels are 0..m_i; L levels are
# 0..2*m_i where odd levels are bridge intervals. The model is carried
# by the owning graph.
State = Tuple[int, ...]


class Model(str, Enum):
    """Which combinatorial model a state or graph belongs to."""

    S = "s"
    L = "l"


class Side(str, Enum):
    """Side of a face relative to its owning domain."""

    LEFT = "left"
    RIGHT = "right"

    @property
    def sign(self) -> int:
        """sgn(τ, κ): +1 for a left face, -1 for a right face."""
        return 1 if self is Side.LEFT else -1


class WallLabel(IntEnum):
    ABSORBING = -1
    BIDIRECTIONAL = 0
    ENTRANCE = 1


@dataclass(frozen=True)
class Cell:
    """
    Cell of the threshold grid, in grid indices.

    Each coordinate is ``(p, q)``: ``q == p`` is degenerate (the face
    value), ``q == p + 1`` a bounded interval, ``q is None`` half-infinite.
    """

    bounds: Tuple[Tuple[int, Optional[int]], ...]

    @classmethod
    def of_domain(cls, state: State, top_levels: Tuple[int, ...]) -> "Cell":
        return cls(
            tuple(
                (level, level + 1 if level < top else None)
                for level, top in zip(state, top_levels)
            )
        )

    @property
    def degenerate(self) -> Tuple[int, ...]:
        return tuple(i for i, (p, q) in enumerate(self.bounds) if q == p)

    @property
    def dimension(self) -> int:
        return len(self.bounds) - len(self.degenerate)

    def corner_indices(self) -> Iterator[Tuple[int, ...]]:
        """Grid-index corners; a half-infinite coordinate contributes only its finite end."""
        choices = [(p,) if q is None or q == p else (p, q) for p, q in self.bounds]
        return product(*choices)


@dataclass(frozen=True)
class Wall:
    """
    A pair (face, owner domain).

    The face is the owner's left or right face along ``index``.
    """

    owner: State
    index: int
    side: Side

    @property
    def neighbor(self) -> State:
        step = -1 if self.side is Side.LEFT else 1
        levels = list(self.owner)
        levels[self.index] += step
        return tuple(levels)

    @property
    def face_point(self) -> int:
        """Grid index of the degenerate face coordinate."""
        level = self.owner[self.index]
        return level if self.side is Side.LEFT else level + 1

    def face(self, top_levels: Tuple[int, ...]) -> Cell:
        bounds = list(Cell.of_domain(self.owner, top_levels).bounds)
        bounds[self.index] = (self.face_point, self.face_point)
        return Cell(tuple(bounds))
