"""Substitution 0 -> 0111, 1 -> 0 and its geometric realisation.

Tile 0 has length lam, tile 1 has length 1.  Words are kept as uint8 arrays
(one byte per letter); point lists are derived on demand.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .algebra import LAM, ZLambda

RULE = {0: (0, 1, 1, 1), 1: (0,)}
# tile lengths as (a, b) in a + b*lam
TILE_LENGTH = {0: (0, 1), 1: (1, 0)}


def _image_tables(rule=RULE):
    lens = np.array([len(rule[0]), len(rule[1])], dtype=np.int64)
    return lens, [np.array(rule[0], dtype=np.uint8), np.array(rule[1], dtype=np.uint8)]


def _subst_array(letters: np.ndarray, rule=RULE) -> np.ndarray:
    lens, imgs = _image_tables(rule)
    n_out = lens[letters].sum()
    if n_out == 0:
        return np.zeros(0, dtype=np.uint8)
    starts = np.concatenate([[0], np.cumsum(lens[letters])[:-1]])
    out = np.empty(n_out, dtype=np.uint8)
    for letter, img in enumerate(imgs):
        s = starts[letters == letter]
        for j, c in enumerate(img):
            out[s + j] = c
    return out


@dataclass(frozen=True)
class Word:
    """Letters over {0,1} with a marker index (the '|' position)."""

    letters: np.ndarray
    marker: int = 0

    def __post_init__(self):
        arr = np.asarray(self.letters, dtype=np.uint8)
        if arr.size and arr.max() > 1:
            raise ValueError("letters must be 0 or 1")
        if not 0 <= self.marker <= arr.size:
            raise ValueError("marker out of range")
        arr.setflags(write=False)
        object.__setattr__(self, "letters", arr)

    @classmethod
    def parse(cls, s: str) -> Word:
        """'0111|0' style strings; no bar means marker at 0."""
        if "|" in s:
            left, right = s.split("|")
            return cls(np.array([int(c) for c in left + right], dtype=np.uint8), len(left))
        return cls(np.array([int(c) for c in s], dtype=np.uint8), 0)

    def __len__(self):
        return int(self.letters.size)

    def __str__(self):
        s = "".join("01"[c] for c in self.letters)
        if self.marker == 0:
            return s
        return s[: self.marker] + "|" + s[self.marker:]

    @property
    def left(self) -> np.ndarray:
        return self.letters[: self.marker]

    @property
    def right(self) -> np.ndarray:
        return self.letters[self.marker:]

    def runs(self) -> list[tuple[int, int]]:
        """Run-length view: (letter, multiplicity)."""
        x = self.letters
        if x.size == 0:
            return []
        cut = np.flatnonzero(np.diff(x)) + 1
        starts = np.concatenate([[0], cut])
        ends = np.concatenate([cut, [x.size]])
        return [(int(x[s]), int(e - s)) for s, e in zip(starts, ends)]


def substitute(w: Word, power: int = 1) -> Word:
    """Apply rho^power; the marker follows the image of the boundary."""
    if power < 1:
        raise ValueError("power must be >= 1")
    left, right = w.left, w.right
    for _ in range(power):
        left, right = _subst_array(left), _subst_array(right)
    return Word(np.concatenate([left, right]), int(left.size))


def word_lengths(n: int, start: int = 0) -> list[int]:
    """|rho^m(start)| for m = 0..n via the substitution matrix."""
    c = np.array([1, 0] if start == 0 else [0, 1], dtype=object)
    out = [1]
    for _ in range(n):
        c = np.array([c[0] + c[1], 3 * c[0]], dtype=object)
        out.append(int(c.sum()))
    return out


def fixed_word(level: int) -> Word:
    """rho^(2 level)(0|0)."""
    return substitute(Word(np.array([0, 0], dtype=np.uint8), 1), 2 * level)


@dataclass(frozen=True)
class WeightedPointSet:
    """Left endpoints of a two-sided word, with per-type complex weights.

    Positions are exact: pos = pos_a + pos_b*lam with int64 arrays.
    """

    pos_a: np.ndarray
    pos_b: np.ndarray
    types: np.ndarray
    tile_weights: tuple[complex, complex] = (1.0, 1.0)
    level: int | None = None
    # exact left endpoint of the first tile and right endpoint of the last
    left_end: ZLambda = field(default_factory=ZLambda)
    right_end: ZLambda = field(default_factory=ZLambda)

    def __len__(self):
        return int(self.types.size)

    @cached_property
    def positions(self) -> np.ndarray:
        return self.pos_a + self.pos_b * LAM

    @cached_property
    def weights(self) -> np.ndarray:
        w = np.asarray(self.tile_weights, dtype=complex)
        return w[self.types]

    def point(self, i: int) -> ZLambda:
        return ZLambda(int(self.pos_a[i]), int(self.pos_b[i]))

    @property
    def radius(self) -> float:
        """Half-width of the covered interval (the two sides are symmetric)."""
        return 0.5 * (float(self.right_end) - float(self.left_end))

    @property
    def length(self) -> float:
        return float(self.right_end) - float(self.left_end)

    def with_weights(self, u) -> WeightedPointSet:
        return WeightedPointSet(self.pos_a, self.pos_b, self.types, tuple(complex(x) for x in u),
                                self.level, self.left_end, self.right_end)

    def density(self) -> float:
        return len(self) / self.length

    def to_csv(self, fh=None) -> str | None:
        buf = fh if fh is not None else io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["pos_a", "pos_b", "pos_float", "tile_type", "weight_re", "weight_im"])
        pf, wts = self.positions, self.weights
        for i in range(len(self)):
            wr.writerow([int(self.pos_a[i]), int(self.pos_b[i]), repr(float(pf[i])), int(self.types[i]),
                         repr(float(wts[i].real)), repr(float(wts[i].imag))])
        return buf.getvalue() if fh is None else None


def point_set(w: Word, weights=(1.0, 1.0), level=None) -> WeightedPointSet:
    """Realise a word geometrically with the marker tile starting at 0."""
    t = w.letters.astype(np.int64)
    step_a = (t == 1).astype(np.int64)
    step_b = (t == 0).astype(np.int64)
    ca = np.concatenate([[0], np.cumsum(step_a)])
    cb = np.concatenate([[0], np.cumsum(step_b)])
    ca -= ca[w.marker]
    cb -= cb[w.marker]
    return WeightedPointSet(
        pos_a=ca[:-1].copy(), pos_b=cb[:-1].copy(), types=t,
        tile_weights=tuple(complex(x) for x in weights), level=level,
        left_end=ZLambda(int(ca[0]), int(cb[0])), right_end=ZLambda(int(ca[-1]), int(cb[-1])),
    )


def geometric_patch(level: int, weights=(1.0, 1.0)) -> WeightedPointSet:
    if level < 1:
        raise ValueError("level must be >= 1")
    return point_set(fixed_word(level), weights, level)


class Decomposition(NamedTuple):
    tiles: list[tuple[int, int]]
    head: int  # letters before the first recognised supertile
    tail: int  # trailing letters that cannot be completed locally

    def preimage(self) -> Word:
        return Word(np.array([t for t, _ in self.tiles], dtype=np.uint8))


class IllegalWordError(ValueError):
    pass


def supertile_decompose(w: Word) -> Decomposition:
    """Level-1 supertiles: each 0111 block is a 0, each 0 followed by 0 is a 1.

    Leading 1s (tail of a 0111 cut off on the left) and a final 0 whose
    successor is unknown are reported as partial.
    """
    x = w.letters
    n = x.size
    zeros = np.flatnonzero(x == 0)
    if zeros.size == 0:
        if n > 3:
            raise IllegalWordError("run of more than three 1s")
        return Decomposition([], n, 0)
    head = int(zeros[0])
    if head > 3:
        raise IllegalWordError("run of more than three 1s")
    tiles = []
    for j, s in enumerate(zeros):
        nxt = zeros[j + 1] if j + 1 < zeros.size else n
        gap = nxt - s - 1  # number of 1s after this 0
        if gap == 0:
            if nxt == n:
                return Decomposition(tiles, head, 1)
            tiles.append((1, int(s)))
        elif gap == 3:
            tiles.append((0, int(s)))
        elif nxt == n and gap < 3:
            return Decomposition(tiles, head, n - int(s))
        else:
            raise IllegalWordError(f"0 followed by {gap} ones at index {s}")
    return Decomposition(tiles, head, 0)


def letter_frequencies(w: Word) -> tuple[float, float]:
    n = len(w)
    if n == 0:
        raise ValueError("empty word")
    f1 = int(w.letters.sum()) / n
    return 1.0 - f1, f1
