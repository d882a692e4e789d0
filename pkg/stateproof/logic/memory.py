"""
Locations and value carriers of the global state.

A signature fixes the set of locations and, for each location, the finite carrier its
values are drawn from. Stores are total assignments over a signature.
"""

import itertools
from collections.abc import Hashable, Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from typing import TypeAlias

from .errors import DuplicateLocation, EmptyCarrier, UnknownLocation

Location: TypeAlias = str | int
Value: TypeAlias = Hashable


@dataclass(frozen=True)
class MemorySignature:
    """Immutable declaration of locations and their carriers, in declaration order."""

    locations: tuple[Location, ...]
    carriers: tuple[tuple[Value, ...], ...]

    def __contains__(self, location: object) -> bool:
        return location in self.locations

    def carrier(self, location: Location) -> tuple[Value, ...]:
        try:
            return self.carriers[self.locations.index(location)]
        except ValueError:
            raise UnknownLocation(location) from None

    def require(self, location: Location) -> Location:
        if location not in self.locations:
            raise UnknownLocation(location)
        return location

    @property
    def store_count(self) -> int:
        count = 1
        for carrier in self.carriers:
            count *= len(carrier)
        return count

    def __str__(self) -> str:
        parts = []
        for location, carrier in zip(self.locations, self.carriers):
            values = ",".join(str(v) for v in carrier)
            parts.append(f"{location}:{{{values}}}")
        return "locations " + " ".join(parts)


@dataclass(frozen=True)
class Store:
    """Total map from the signature's locations to carrier values, kept in signature order."""

    entries: tuple[tuple[Location, Value], ...]

    def __getitem__(self, location: Location) -> Value:
        for name, value in self.entries:
            if name == location:
                return value
        raise UnknownLocation(location)

    def set(self, location: Location, value: Value) -> "Store":
        if location not in self.locations:
            raise UnknownLocation(location)
        return Store(tuple((name, value if name == location else old) for name, old in self.entries))

    @property
    def locations(self) -> tuple[Location, ...]:
        return tuple(name for name, _ in self.entries)

    def as_dict(self) -> dict[Location, Value]:
        return dict(self.entries)

    def __str__(self) -> str:
        return "{" + ", ".join(f"{name}: {value}" for name, value in self.entries) + "}"


def declare_signature(
    locations: Iterable[Location], carriers: Mapping[Location, Sequence[Value]]
) -> MemorySignature:
    """
    Build a signature from a location list and a carrier per location.

    Args:
        locations: Location identifiers, in the order used for all enumerations
        carriers: Finite, ordered carrier of each location; a repeated value is kept once, at its first position

    Returns:
        The immutable signature

    Raises:
        DuplicateLocation: If a location is listed twice
        EmptyCarrier: If a location has no values
        UnknownLocation: If a location has no carrier entry
    """
    ordered: list[Location] = []
    for location in locations:
        if location in ordered:
            raise DuplicateLocation(location)
        ordered.append(location)

    resolved: list[tuple[Value, ...]] = []
    for location in ordered:
        if location not in carriers:
            raise UnknownLocation(location)
        carrier = tuple(dict.fromkeys(carriers[location]))
        if not carrier:
            raise EmptyCarrier(location)
        resolved.append(carrier)
    return MemorySignature(tuple(ordered), tuple(resolved))


def stores(sig: MemorySignature) -> Iterator[Store]:
    """Yield every store over `sig` once; the last location varies fastest."""
    for values in itertools.product(*sig.carriers):
        yield Store(tuple(zip(sig.locations, values)))
