"""Signature-algorithm parameter catalogs.

A catalog is a list of named parameter sets (signature size, public-key size,
signature budget per key, per-verification cost) loaded from a CSV table.
Catalogs are immutable after parsing and safe to share between threads.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation

from .errors import AlgorithmNotFoundError, CatalogError, ValidationError

_REQUIRED_COLUMNS = (
    "Name",
    "Signature Size",
    "Public Key Size",
    "Max Signatures",
    "Computational Cost",
)

# Signature budgets are kept as exact integers; anything past this would
# overflow a signed 64-bit counter.
_MAX_SIGS_LIMIT = 2**63 - 1


@dataclass(frozen=True)
class SignatureAlgorithm:
    """One signature scheme's parameter set.

    sig_size and pk_size are byte counts, max_sigs is the number of
    signatures one key pair may produce before it must be replaced, and
    cost is the effort to verify one signature in millions of cycles.
    """

    name: str
    sig_size: int
    pk_size: int
    max_sigs: int
    cost: float

    def __post_init__(self) -> None:
        if not self.name.strip():
            raise ValidationError("algorithm name must be non-empty")
        if self.sig_size < 0:
            raise ValidationError(f"{self.name}: sig_size must be >= 0")
        if self.pk_size < 0:
            raise ValidationError(f"{self.name}: pk_size must be >= 0")
        if self.max_sigs < 1:
            raise ValidationError(f"{self.name}: max_sigs must be >= 1")
        if not self.cost >= 0.0:
            raise ValidationError(f"{self.name}: cost must be >= 0")

    def __str__(self) -> str:
        return self.name


def parse_algorithm_catalog(csv_text: str) -> list[SignatureAlgorithm]:
    """Parse an algorithm catalog from CSV text.

    The first row must name the five required columns (surrounding
    whitespace on header cells is ignored, column order is free, extra
    columns are ignored).  `Max Signatures` accepts integer literals and
    decimal scientific notation such as ``1E4``, truncated to an integer.
    Blank rows are skipped.  Duplicate names are rejected.
    """
    rows = list(csv.reader(io.StringIO(csv_text)))
    if not rows:
        raise CatalogError("catalog is empty; expected a header row")

    header = [cell.strip() for cell in rows[0]]
    for column in _REQUIRED_COLUMNS:
        if column not in header:
            raise CatalogError(f"catalog is missing required column '{column}'")
    index = {column: header.index(column) for column in _REQUIRED_COLUMNS}

    catalog: list[SignatureAlgorithm] = []
    seen: set[str] = set()
    for lineno, row in enumerate(rows[1:], start=2):
        if not any(cell.strip() for cell in row):
            continue
        if len(row) <= max(index.values()):
            raise CatalogError(
                f"row {lineno}: expected {len(header)} fields, got {len(row)}"
            )
        field = {column: row[i].strip() for column, i in index.items()}

        name = field["Name"]
        if name in seen:
            raise CatalogError(f"row {lineno}: duplicate algorithm name '{name}'")
        seen.add(name)

        catalog.append(
            SignatureAlgorithm(
                name=name,
                sig_size=_parse_int(field["Signature Size"], "Signature Size", lineno),
                pk_size=_parse_int(field["Public Key Size"], "Public Key Size", lineno),
                max_sigs=_parse_max_sigs(field["Max Signatures"], lineno),
                cost=_parse_float(field["Computational Cost"], "Computational Cost", lineno),
            )
        )
    return catalog


def format_algorithm_catalog(catalog: list[SignatureAlgorithm]) -> str:
    """Render a catalog back to CSV text; inverse of parse_algorithm_catalog."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(_REQUIRED_COLUMNS)
    for alg in catalog:
        writer.writerow(
            [alg.name, alg.sig_size, alg.pk_size, alg.max_sigs, repr(alg.cost)]
        )
    return out.getvalue()


def find_algorithm(
    name: str, catalog: list[SignatureAlgorithm]
) -> SignatureAlgorithm:
    """Return the first catalog entry whose name equals `name` exactly."""
    for alg in catalog:
        if alg.name == name:
            return alg
    raise AlgorithmNotFoundError("Requested algorithm type not found.")


def _parse_int(text: str, column: str, lineno: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise CatalogError(
            f"row {lineno}: '{column}' value {text!r} is not an integer"
        ) from None


def _parse_float(text: str, column: str, lineno: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise CatalogError(
            f"row {lineno}: '{column}' value {text!r} is not a number"
        ) from None


def _parse_max_sigs(text: str, lineno: int) -> int:
    try:
        value = int(Decimal(text))
    except (InvalidOperation, ValueError):
        raise CatalogError(
            f"row {lineno}: 'Max Signatures' value {text!r} is not numeric"
        ) from None
    if value > _MAX_SIGS_LIMIT:
        raise CatalogError(
            f"row {lineno}: 'Max Signatures' value {text!r} exceeds 2**63 - 1"
        )
    return value
