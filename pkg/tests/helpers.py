from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

FIXTURES = Path(__file__).parent / "fixtures"


@dataclass
class GoldCase:
    family: str
    text: str
    sentences: list[list[str]]
    mxpost: bool = False

    @property
    def tokens(self) -> list[str]:
        return [t for s in self.sentences for t in s]


def load_tokenizer_gold(path: Path = FIXTURES / "tokenizer_gold.txt") -> list[GoldCase]:
    cases: list[GoldCase] = []
    family = ""
    pending: tuple[str, bool] | None = None
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        key, _, value = line.partition(": ")
        if key == "family":
            family = value
        elif key in ("text", "mxpost"):
            pending = (value, key == "mxpost")
        elif key == "gold":
            assert pending is not None, line
            sentences = [s.split() for s in value.split(" ||| ")]
            cases.append(GoldCase(family, pending[0], sentences, pending[1]))
            pending = None
        else:
            raise ValueError(f"bad fixture line: {line!r}")
    return cases
