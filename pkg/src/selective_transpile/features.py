"""Language features, language levels and the FeatureSet bitmask algebra."""

from __future__ import annotations

import enum
from functools import total_ordering
from typing import Iterable, Iterator


class LanguageLevel(enum.IntEnum):
    ES5 = 0
    ES2015 = 1
    ES2016 = 2
    ES2017 = 3
    ES2020 = 4
    ESNEXT = 5

    @classmethod
    def parse(cls, text: str) -> "LanguageLevel":
        try:
            return cls[text.upper()]
        except KeyError:
            raise ValueError(f"unknown language level: {text!r}") from None

    @property
    def flag(self) -> str:
        return self.name.lower()


class Feature(enum.Enum):
    # value = (bit index, introducing level)
    OPTIONAL_CHAINING = (0, LanguageLevel.ES2020)
    NULLISH_COALESCING = (1, LanguageLevel.ES2020)
    ASYNC_FUNCTIONS = (2, LanguageLevel.ES2017)
    EXPONENT_OPERATOR = (3, LanguageLevel.ES2016)
    ARROW_FUNCTIONS = (4, LanguageLevel.ES2015)
    CLASSES = (5, LanguageLevel.ES2015)
    TEMPLATE_LITERALS = (6, LanguageLevel.ES2015)
    DEFAULT_PARAMETERS = (7, LanguageLevel.ES2015)
    REST_PARAMETERS = (8, LanguageLevel.ES2015)
    SPREAD_EXPRESSIONS = (9, LanguageLevel.ES2015)
    GENERATORS = (10, LanguageLevel.ES2015)
    BLOCK_SCOPED_DECLARATIONS = (11, LanguageLevel.ES2015)

    @property
    def bit(self) -> int:
        return 1 << self.value[0]

    @property
    def level(self) -> LanguageLevel:
        return self.value[1]


ALL_FEATURES: tuple[Feature, ...] = tuple(Feature)
_BY_BIT = {f.value[0]: f for f in ALL_FEATURES}
_FULL_MASK = (1 << len(ALL_FEATURES)) - 1


@total_ordering
class FeatureSet:
    """Immutable set of features stored as an integer bitmask."""

    __slots__ = ("_mask",)

    def __init__(self, features: Iterable[Feature] = ()) -> None:
        mask = 0
        for f in features:
            mask |= f.bit
        object.__setattr__(self, "_mask", mask)

    @classmethod
    def from_mask(cls, mask: int) -> "FeatureSet":
        if mask & ~_FULL_MASK:
            raise ValueError(f"mask {mask:#x} has bits outside the feature universe")
        fs = cls.__new__(cls)
        object.__setattr__(fs, "_mask", mask)
        return fs

    @classmethod
    def of(cls, *features: Feature) -> "FeatureSet":
        return cls(features)

    @classmethod
    def from_names(cls, names: Iterable[str]) -> "FeatureSet":
        return cls(Feature[n] for n in names)

    def __setattr__(self, name, value):
        raise AttributeError("FeatureSet is immutable")

    @property
    def mask(self) -> int:
        return self._mask

    def __iter__(self) -> Iterator[Feature]:
        mask = self._mask
        while mask:
            low = mask & -mask
            yield _BY_BIT[low.bit_length() - 1]
            mask ^= low

    def __len__(self) -> int:
        return bin(self._mask).count("1")

    def __bool__(self) -> bool:
        return self._mask != 0

    def __contains__(self, f: object) -> bool:
        return isinstance(f, Feature) and bool(self._mask & f.bit)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FeatureSet):
            return self._mask == other._mask
        return NotImplemented

    def __lt__(self, other: "FeatureSet") -> bool:
        return self._mask < other._mask

    def __hash__(self) -> int:
        return hash(self._mask)

    def __or__(self, other: "FeatureSet") -> "FeatureSet":
        return FeatureSet.from_mask(self._mask | other._mask)

    def __and__(self, other: "FeatureSet") -> "FeatureSet":
        return FeatureSet.from_mask(self._mask & other._mask)

    def __sub__(self, other: "FeatureSet") -> "FeatureSet":
        return FeatureSet.from_mask(self._mask & ~other._mask)

    def issubset(self, other: "FeatureSet") -> bool:
        return self._mask & ~other._mask == 0

    def names(self) -> list[str]:
        """Sorted SCREAMING_SNAKE_CASE names."""
        return sorted(f.name for f in self)

    def __repr__(self) -> str:
        return "FeatureSet({" + ", ".join(self.names()) + "})"


EMPTY = FeatureSet()


def features_of_level(level: LanguageLevel) -> FeatureSet:
    """Every feature a runtime at ``level`` supports natively."""
    return _LEVEL_TABLE[LanguageLevel(level)]


_LEVEL_TABLE = {
    lvl: FeatureSet(f for f in ALL_FEATURES if f.level <= lvl) for lvl in LanguageLevel
}


def set_union(a: FeatureSet, b: FeatureSet) -> FeatureSet:
    return a | b


def set_minus(a: FeatureSet, b: FeatureSet) -> FeatureSet:
    return a - b


def intersects(a: FeatureSet, b: FeatureSet) -> bool:
    return (a.mask & b.mask) != 0
