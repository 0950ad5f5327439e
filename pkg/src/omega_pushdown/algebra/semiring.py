"""Complete star-omega semirings.

Two instances are provided: the Boolean semiring 𝔹 = ({0,1}, ∨, ∧) and the
extended naturals ℕ^∞ = (ℕ ∪ {∞}, +, ·). Values are plain Python objects
(``bool`` for 𝔹, ``int`` or :data:`INF` for ℕ^∞) so they are immutable and
safe to share between threads.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum
from typing import Literal, TypeAlias

from omega_pushdown.config import SemiringName


class Infinity(Enum):
    """The distinguished element ∞ of ℕ^∞."""

    INF = "inf"

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"


INF = Infinity.INF

SemiringValue: TypeAlias = bool | int | Literal[Infinity.INF]


class Semiring(ABC):
    """A complete star-omega semiring over a fixed carrier."""

    name: SemiringName

    @property
    @abstractmethod
    def zero(self) -> SemiringValue: ...

    @property
    @abstractmethod
    def one(self) -> SemiringValue: ...

    @abstractmethod
    def add(self, a: SemiringValue, b: SemiringValue) -> SemiringValue: ...

    @abstractmethod
    def mul(self, a: SemiringValue, b: SemiringValue) -> SemiringValue: ...

    @abstractmethod
    def star(self, a: SemiringValue) -> SemiringValue:
        """Value of 1 + a + a² + … ."""

    @abstractmethod
    def omega(self, a: SemiringValue) -> SemiringValue:
        """Value of the infinite product a·a·a·… ."""

    @abstractmethod
    def contains(self, value: object) -> bool:
        """Whether ``value`` belongs to the carrier."""

    @abstractmethod
    def parse(self, literal: str) -> SemiringValue:
        """Parse a weight literal, raising ``ValueError`` when it is malformed."""

    @abstractmethod
    def coerce(self, value: SemiringValue) -> SemiringValue:
        """Map a value of either instance into this carrier."""

    def format(self, value: SemiringValue) -> str:
        if value is INF:
            return "inf"
        return str(int(value))

    def is_zero(self, value: SemiringValue) -> bool:
        return value is not INF and value == 0

    def sum(self, family: Iterable[SemiringValue]) -> SemiringValue:
        total = self.zero
        for value in family:
            total = self.add(total, value)
        return total

    def product(self, family: Iterable[SemiringValue]) -> SemiringValue:
        total = self.one
        for value in family:
            total = self.mul(total, value)
        return total


@dataclass(frozen=True)
class BooleanSemiring(Semiring):
    """𝔹 with ∨ as addition and ∧ as multiplication; every star is 1."""

    name: SemiringName = SemiringName.BOOLEAN

    @property
    def zero(self) -> SemiringValue:
        return False

    @property
    def one(self) -> SemiringValue:
        return True

    def add(self, a: SemiringValue, b: SemiringValue) -> SemiringValue:
        return bool(a) or bool(b)

    def mul(self, a: SemiringValue, b: SemiringValue) -> SemiringValue:
        return bool(a) and bool(b)

    def star(self, a: SemiringValue) -> SemiringValue:
        return True

    def omega(self, a: SemiringValue) -> SemiringValue:
        return bool(a)

    def contains(self, value: object) -> bool:
        return isinstance(value, bool)

    def parse(self, literal: str) -> SemiringValue:
        if literal not in ("0", "1"):
            raise ValueError(f"bad weight literal {literal!r} for boolean semiring")
        return literal == "1"

    def coerce(self, value: SemiringValue) -> SemiringValue:
        return not self.is_zero(value)


@dataclass(frozen=True)
class NatInfSemiring(Semiring):
    """ℕ ∪ {∞} with ordinary + and ·, ∞ absorbing except ∞·0 = 0.

    ``bound`` optionally saturates any finite result above it to ∞. Python
    integers never overflow, so the default is exact arithmetic.
    """

    bound: int | None = None
    name: SemiringName = SemiringName.NAT_INF

    @property
    def zero(self) -> SemiringValue:
        return 0

    @property
    def one(self) -> SemiringValue:
        return 1

    def _saturate(self, value: int) -> SemiringValue:
        if self.bound is not None and value > self.bound:
            return INF
        return value

    def add(self, a: SemiringValue, b: SemiringValue) -> SemiringValue:
        if a is INF or b is INF:
            return INF
        return self._saturate(int(a) + int(b))

    def mul(self, a: SemiringValue, b: SemiringValue) -> SemiringValue:
        if self.is_zero(a) or self.is_zero(b):
            return 0
        if a is INF or b is INF:
            return INF
        return self._saturate(int(a) * int(b))

    def star(self, a: SemiringValue) -> SemiringValue:
        return 1 if self.is_zero(a) else INF

    def omega(self, a: SemiringValue) -> SemiringValue:
        if a is INF:
            return INF
        if int(a) <= 1:
            return int(a)
        return INF

    def contains(self, value: object) -> bool:
        if value is INF:
            return True
        return isinstance(value, int) and not isinstance(value, bool) and value >= 0

    def parse(self, literal: str) -> SemiringValue:
        if literal == "inf":
            return INF
        if not literal.isdigit():
            raise ValueError(f"bad weight literal {literal!r} for nat-inf semiring")
        return self._saturate(int(literal))

    def coerce(self, value: SemiringValue) -> SemiringValue:
        if value is INF:
            return INF
        return self._saturate(int(value))

    def less_than(self, a: SemiringValue, b: SemiringValue) -> bool:
        if a is INF:
            return False
        if b is INF:
            return True
        return int(a) < int(b)


BOOLEAN = BooleanSemiring()
NAT_INF = NatInfSemiring()


def get_semiring(name: SemiringName | str, bound: int | None = None) -> Semiring:
    """Return the semiring instance registered under ``name``."""
    match SemiringName(name):
        case SemiringName.BOOLEAN:
            return BOOLEAN
        case SemiringName.NAT_INF:
            return NAT_INF if bound is None else NatInfSemiring(bound=bound)


# Module-level conveniences mirroring the operation names used across the package.


def sr_star(semiring: Semiring, a: SemiringValue) -> SemiringValue:
    return semiring.star(a)


def sr_omega(semiring: Semiring, a: SemiringValue) -> SemiringValue:
    return semiring.omega(a)


def sr_sum(semiring: Semiring, family: Iterable[SemiringValue]) -> SemiringValue:
    return semiring.sum(family)


def sr_product(semiring: Semiring, family: Iterable[SemiringValue]) -> SemiringValue:
    return semiring.product(family)
