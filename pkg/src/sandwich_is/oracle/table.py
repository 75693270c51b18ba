"""Cayley tables of sandwich products over the canonical element list."""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field

import numpy as np

from .. import core, kernels
from ..core import PartialInjection
from ..errors import CapExceeded

HARD_CAP = 250


def size_cap() -> int:
    """Largest table size the oracle accepts; ``SANDWICH_IS_CAP`` may lower it."""
    raw = os.environ.get("SANDWICH_IS_CAP")
    if raw is None:
        return HARD_CAP
    return min(int(raw), HARD_CAP)


def check_cap(m: int) -> None:
    cap = size_cap()
    if m > cap:
        raise CapExceeded(f"table size {m} exceeds the cap of {cap}")


@dataclass(frozen=True, eq=False)
class CayleyTable:
    table: np.ndarray
    labels: tuple[str, ...] | None = field(default=None)

    def __post_init__(self):
        t = np.ascontiguousarray(self.table, dtype=np.int32)
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise ValueError(f"table must be square, got shape {t.shape}")
        if t.size and (t.min() < 0 or t.max() >= t.shape[0]):
            raise ValueError("table entries must lie in 0..m-1")
        if self.labels is not None and len(self.labels) != t.shape[0]:
            raise ValueError("one label per row is required")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @property
    def size(self) -> int:
        return self.table.shape[0]

    def __eq__(self, other):
        if not isinstance(other, CayleyTable):
            return NotImplemented
        return np.array_equal(self.table, other.table) and self.labels == other.labels

    def is_associative(self) -> bool:
        t = self.table
        # (ij)k == i(jk) for all triples, one slab of i at a time
        for i in range(self.size):
            if not np.array_equal(t[t[i]], t[i][t]):
                return False
        return True

    def to_csv(self) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(self.table.tolist())
        return buf.getvalue()

    def to_json(self) -> dict:
        data = {"size": self.size, "table": self.table.tolist()}
        if self.labels is not None:
            data["labels"] = list(self.labels)
        return data

    @classmethod
    def from_csv(cls, text: str) -> "CayleyTable":
        rows = [list(map(int, r)) for r in csv.reader(io.StringIO(text)) if r]
        return cls(np.array(rows, dtype=np.int32).reshape(len(rows), len(rows)))

    @classmethod
    def from_json(cls, data: dict | str) -> "CayleyTable":
        if isinstance(data, str):
            data = json.loads(data)
        table = np.array(data["table"], dtype=np.int32).reshape(data["size"], data["size"])
        labels = data.get("labels")
        return cls(table, tuple(labels) if labels is not None else None)


def sandwich_table(n: int, sandwich: PartialInjection) -> CayleyTable:
    """Table of x * y = x sandwich y over ``enumerate_all(n)``."""
    m = core.universe_size(n)
    check_cap(m)
    t = kernels.product_table(core.image_matrix(n), sandwich.images, core.index_lookup(n))
    return CayleyTable(t, tuple(str(a) for a in core.enumerate_all(n)))


def cayley(ctx) -> CayleyTable:
    """Table of the context's product, i.e. sandwiching by its idempotent ``e``."""
    return sandwich_table(ctx.n, ctx.e)
