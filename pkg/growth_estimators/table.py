"""Growth tables: per-radius samples of the Nevanlinna functionals.

CSV layout::

    # schema_version=1
    u,r,m,N,T,logM,V,N_zeros,flags
    1.5,1.1399...e-2,...

Floats are written with ``%.17g`` so a table read back with
:meth:`GrowthTable.from_csv` is bit-identical to the one written.
"""

from __future__ import annotations

import io
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd

from punctured_functions import SchemaError
from punctured_functions.log_complex import FloatArray

from .grid import RadiusGrid

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
COLUMNS = ("u", "r", "m", "N", "T", "logM", "V", "N_zeros", "flags")
NUMERIC_COLUMNS = COLUMNS[:-1]
FLAG_SEPARATOR = ";"
T_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class GrowthTable:
    """Samples of m, N, T, log M, V and the zero counting function on a grid.

    Attributes:
        grid: the radius grid; row k belongs to ``grid.radii[k]``.
        frame: one row per radius with the columns of :data:`COLUMNS`;
            missing values are NaN, ``flags`` is empty for good rows.
        name: label of the sampled function.
        distinct: the ``N_zeros`` column counts distinct zeros.
    """

    grid: RadiusGrid
    frame: pd.DataFrame
    name: str = "f"
    distinct: bool = False

    def __post_init__(self) -> None:
        if tuple(self.frame.columns) != COLUMNS:
            message = f"growth table columns must be {list(COLUMNS)}, got {list(self.frame.columns)}"
            raise SchemaError(message)
        if len(self.frame) != self.grid.points:
            message = f"growth table has {len(self.frame)} rows for a {self.grid.points}-point grid"
            raise SchemaError(message)
        good = self.valid
        m = self.frame["m"].to_numpy()[good]
        n = self.frame["N"].to_numpy()[good]
        t = self.frame["T"].to_numpy()[good]
        if np.any(np.abs(t - (m + n)) > T_RTOL * np.maximum(1.0, np.abs(t))):
            message = f"growth table '{self.name}' breaks T = m + N"
            raise SchemaError(message)

    # ── Access ───────────────────────────────────────────────────────────

    @property
    def valid(self) -> np.ndarray:
        """Rows without flags."""
        return (self.frame["flags"] == "").to_numpy()

    @property
    def failed_rows(self) -> int:
        return int(np.count_nonzero(~self.valid))

    @property
    def u(self) -> FloatArray:
        return self.frame["u"].to_numpy(dtype=np.float64)

    def column(self, name: str) -> FloatArray:
        if name not in NUMERIC_COLUMNS:
            message = f"unknown growth table column '{name}'"
            raise KeyError(message)
        return self.frame[name].to_numpy(dtype=np.float64)

    def has_column(self, name: str) -> bool:
        """True when the column holds at least one value on an unflagged row."""
        return bool(np.any(np.isfinite(self.column(name))[self.valid]))

    def flag_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for flags in self.frame["flags"]:
            for flag in filter(None, flags.split(FLAG_SEPARATOR)):
                counts[flag] = counts.get(flag, 0) + 1
        return counts

    # ── CSV ──────────────────────────────────────────────────────────────

    def to_csv(self, path: str | Path | None = None) -> str:
        """Render the table as CSV text, also writing it to ``path`` if given."""
        buffer = io.StringIO()
        buffer.write(f"# schema_version={SCHEMA_VERSION}\n")
        self.frame.to_csv(buffer, index=False, float_format="%.17g", na_rep="nan", lineterminator="\n")
        text = buffer.getvalue()
        if path is not None:
            Path(path).write_text(text, encoding="utf-8")
        return text

    @classmethod
    def from_csv(
        cls, source: str | Path | io.StringIO, *, name: str = "f", distinct: bool = False
    ) -> GrowthTable:
        """Read a table written by :meth:`to_csv`.

        ``source`` is a path or a text buffer; the grid is rebuilt from the
        ``u`` column.

        Raises:
            SchemaError: wrong schema version or columns.
        """
        if isinstance(source, io.StringIO):
            text = source.getvalue()
        else:
            text = Path(source).read_text(encoding="utf-8")
        first, _, body = text.partition("\n")
        if first.strip() != f"# schema_version={SCHEMA_VERSION}":
            message = f"unsupported growth table header {first.strip()!r}"
            raise SchemaError(message)
        frame = pd.read_csv(
            io.StringIO(body),
            keep_default_na=False,
            na_values=["nan"],
            float_precision="round_trip",
            dtype={column: np.float64 for column in NUMERIC_COLUMNS} | {"flags": str},
        )
        u = frame["u"].to_numpy(dtype=np.float64)
        grid = RadiusGrid(float(u[0]), float(u[-1]), int(u.size))
        return cls(grid=grid, frame=frame, name=name, distinct=distinct)

    @classmethod
    def from_columns(
        cls,
        grid: RadiusGrid,
        columns: dict[str, FloatArray],
        flags: list[str] | None = None,
        *,
        name: str = "f",
        distinct: bool = False,
    ) -> GrowthTable:
        """Assemble a table from per-column arrays; absent columns are NaN."""
        size = grid.points
        data: dict[str, object] = {"u": grid.u, "r": grid.radii}
        for column in NUMERIC_COLUMNS[2:]:
            values = columns.get(column)
            data[column] = np.full(size, np.nan) if values is None else np.asarray(values, dtype=np.float64)
        data["flags"] = flags if flags is not None else [""] * size
        return cls(grid=grid, frame=pd.DataFrame(data, columns=list(COLUMNS)), name=name, distinct=distinct)
