"""Term nodes shared by the Python and compiled kernels."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class Var:
    index: int

    def __repr__(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True, slots=True)
class Op:
    """An operation node.

    ``slots[i]`` is the number of variables bound in ``args[i]``; it is
    copied from the signature so traversals never need a lookup.
    """

    name: str
    fam: int | None
    slots: tuple[int, ...]
    args: tuple

    def __repr__(self) -> str:
        head = self.name if self.fam is None else f"{self.name}@{self.fam}"
        if not self.args:
            return head
        return f"{head}({', '.join(map(repr, self.args))})"
