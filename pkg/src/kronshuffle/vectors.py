"""Complex vectors as CSV, one ``re,im`` pair per line."""
import csv

import numpy as np


def read_vector_csv(lines) -> np.ndarray:
    values = []
    for lineno, row in enumerate(csv.reader(lines), start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 2:
            raise ValueError(f"line {lineno}: expected 're,im', got {','.join(row)!r}")
        try:
            values.append(complex(float(row[0]), float(row[1])))
        except ValueError:
            raise ValueError(f"line {lineno}: non-numeric entry {','.join(row)!r}") from None
    arr = np.array(values, dtype=np.complex128)
    if not np.isfinite(arr).all():
        raise ValueError("vector has non-finite entries")
    return arr


def load_vector_csv(path) -> np.ndarray:
    with open(path, newline="") as fh:
        return read_vector_csv(fh)


def write_vector_csv(dest, vec) -> None:
    """Write to a path or to an open text stream."""
    vec = np.asarray(vec, dtype=np.complex128)
    lines = "".join(f"{z.real!r},{z.imag!r}\n" for z in vec.tolist())
    if hasattr(dest, "write"):
        dest.write(lines)
    else:
        with open(dest, "w") as fh:
            fh.write(lines)
