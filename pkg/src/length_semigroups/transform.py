"""Full transformations of {1..n}, composed left to right.

A transformation is stored as the tuple of its images, 1-indexed exactly as
written in the two-line notation ``(1 2 ... n / a_1 a_2 ... a_n)``.  Ordering
is lexicographic on that tuple, which is the canonical order used everywhere
a deterministic "smallest" choice is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

MAX_N = 12


class CapacityError(ValueError):
    """Raised when a request exceeds the enumeration budget."""


class ParseError(ValueError):
    pass


def check_capacity(n: int) -> None:
    if n > MAX_N:
        raise CapacityError(f"n={n} exceeds the supported maximum n={MAX_N}")


@dataclass(frozen=True, order=True)
class Transformation:
    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if n < 1:
            raise ValueError("a transformation needs n >= 1")
        check_capacity(n)
        for x, y in enumerate(self.images, 1):
            if not 1 <= y <= n:
                raise ValueError(f"image of {x} is {y}, outside 1..{n}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __len__(self) -> int:
        return len(self.images)

    def __iter__(self) -> Iterator[int]:
        return iter(self.images)

    def __mul__(self, other: Transformation) -> Transformation:
        return compose(self, other)

    def __str__(self) -> str:
        return format_text(self)

    def __repr__(self) -> str:
        return f"Transformation({list(self.images)})"

    def is_bijective(self) -> bool:
        return len(set(self.images)) == self.n


def make(n: int, images: Sequence[int]) -> Transformation:
    images = tuple(int(v) for v in images)
    if len(images) != n:
        raise ValueError(f"expected {n} images, got {len(images)}")
    return Transformation(images)


def identity(n: int) -> Transformation:
    return Transformation(tuple(range(1, n + 1)))


def compose(a: Transformation, b: Transformation) -> Transformation:
    """Left-to-right product: ``x(ab) = (xa)b``."""
    if a.n != b.n:
        raise ValueError(f"cannot compose maps on X_{a.n} and X_{b.n}")
    bi = b.images
    # skip re-validation, the product of valid maps is valid
    out = object.__new__(Transformation)
    object.__setattr__(out, "images", tuple(bi[y - 1] for y in a.images))
    return out


def image_set(a: Transformation) -> list[int]:
    return sorted(set(a.images))


def preimage(a: Transformation, y: int) -> list[int]:
    if not 1 <= y <= a.n:
        raise ValueError(f"point {y} outside 1..{a.n}")
    return [x for x, v in enumerate(a.images, 1) if v == y]


def parse_text(line: str, n: int | None = None) -> Transformation:
    tokens = line.split()
    if not tokens:
        raise ParseError("empty transformation")
    try:
        images = [int(t) for t in tokens]
    except ValueError:
        bad = next(t for t in tokens if not t.lstrip("+-").isdigit())
        raise ParseError(f"malformed token {bad!r} in {line.strip()!r}") from None
    if n is not None and len(images) != n:
        raise ParseError(f"expected {n} entries, got {len(images)}")
    try:
        return Transformation(tuple(images))
    except CapacityError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_text(a: Transformation) -> str:
    return " ".join(map(str, a.images))


def read_elements(path: str | Path) -> list[Transformation]:
    """Read one transformation per line; blank lines and ``#`` comments are skipped."""
    out = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            out.append(parse_text(line))
        except ParseError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from None
    return out


def write_elements(path: str | Path, elements: Iterable[Transformation],
                   header: Iterable[str] = ()) -> None:
    lines = [f"# {h}" for h in header]
    lines.extend(format_text(a) for a in elements)
    Path(path).write_text("\n".join(lines) + "\n")
