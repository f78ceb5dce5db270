from __future__ import annotations

import enum


class CompositionFamily(enum.Enum):
    """Which counting function is meant: ce, co1, co1' or co2."""

    CE = "ce"
    CO1 = "co1"
    CO1_PRIME = "co1p"
    CO2 = "co2"

    @classmethod
    def parse(cls, value) -> "CompositionFamily":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {"co1'": "co1p", "co1prime": "co1p", "co1_prime": "co1p"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            names = ", ".join(f.value for f in cls)
            raise ValueError(f"unknown family {value!r} (expected one of {names})") from None

    @property
    def enumerable(self) -> bool:
        return self is not CompositionFamily.CO1_PRIME

    def __str__(self):
        return self.value
