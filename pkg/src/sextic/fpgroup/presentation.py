from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ..words import Word, cyclic_reduce, format_word, parse_word


class PresentationSyntaxError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class FpPresentation:
    """Generators ``1..generator_count`` and cyclically reduced relators."""

    generator_count: int
    relators: tuple = ()

    def __post_init__(self):
        if self.generator_count < 1:
            raise ValueError("a presentation needs at least one generator")
        rels = []
        for r in self.relators:
            r = cyclic_reduce(r)
            if any(abs(x) > self.generator_count for x in r):
                raise ValueError(f"relator uses an undeclared generator: {r}")
            if r:
                rels.append(r)
        object.__setattr__(self, "relators", tuple(rels))

    def with_relators(self, extra: Iterable[Sequence[int]]) -> "FpPresentation":
        return FpPresentation(self.generator_count, self.relators + tuple(tuple(r) for r in extra))

    def without(self, index: int) -> "FpPresentation":
        rels = self.relators[:index] + self.relators[index + 1:]
        return FpPresentation(self.generator_count, rels)

    def to_text(self) -> str:
        lines = [f"gens {self.generator_count}"]
        lines += [f"rel {format_word(r)}" for r in self.relators]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "FpPresentation":
        n = None
        rels: list[Word] = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            head, _, rest = line.partition(" ")
            if head == "gens":
                if n is not None:
                    raise PresentationSyntaxError("duplicate gens line", lineno)
                try:
                    n = int(rest)
                except ValueError:
                    raise PresentationSyntaxError(f"bad generator count {rest!r}", lineno) from None
            elif head == "rel":
                if n is None:
                    raise PresentationSyntaxError("rel before gens", lineno)
                try:
                    w = parse_word(rest)
                except ValueError as exc:
                    raise PresentationSyntaxError(str(exc), lineno) from None
                if any(abs(x) > n for x in w):
                    raise PresentationSyntaxError("generator index out of range", lineno)
                rels.append(w)
            else:
                raise PresentationSyntaxError(f"unknown directive {head!r}", lineno)
        if n is None:
            raise PresentationSyntaxError("missing gens line", 0)
        return cls(n, tuple(rels))
