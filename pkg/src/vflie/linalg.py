"""Incremental reduced row echelon form over exact scalars.

Vectors are sparse dicts ``key -> scalar``; keys must be mutually comparable.
The pivot of a row is its largest key, so the basis produced is canonical for a
fixed key order.
"""

from __future__ import annotations

from .scalar import sdiv


class Echelon:
    def __init__(self):
        self.rows: dict = {}  # pivot -> row (pivot entry is 1, zero at other pivots)

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        """Residual of ``vec`` after eliminating every pivot coordinate."""
        v = dict(vec)
        for p in [k for k in v if k in self.rows]:
            c = v.get(p)
            if not c:
                continue
            for k, r in self.rows[p].items():
                s = v.get(k, 0) - c * r
                if s:
                    v[k] = s
                else:
                    v.pop(k, None)
        return v

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def add(self, vec: dict) -> bool:
        """Insert ``vec``; return True if it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        pivot = max(v)
        lead = v[pivot]
        row = {k: sdiv(c, lead) for k, c in v.items()}
        for p, other in self.rows.items():
            c = other.get(pivot)
            if c:
                for k, r in row.items():
                    s = other.get(k, 0) - c * r
                    if s:
                        other[k] = s
                    else:
                        other.pop(k, None)
        self.rows[pivot] = row
        return True

    def basis(self) -> list[dict]:
        """Rows in ascending pivot order."""
        return [dict(self.rows[p]) for p in sorted(self.rows)]

    def coordinates(self, vec: dict) -> dict | None:
        """Coefficients of ``vec`` in terms of the rows (keyed by pivot), or None."""
        if self.reduce(vec):
            return None
        return {p: vec[p] for p in self.rows if vec.get(p)}

    def copy(self) -> "Echelon":
        e = Echelon()
        e.rows = {p: dict(r) for p, r in self.rows.items()}
        return e


def rank(vectors) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rank
