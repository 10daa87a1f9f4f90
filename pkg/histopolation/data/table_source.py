import csv
import logging

import numpy as np

from histopolation.data.base import Source
from histopolation.errors import ParseError, ValidationError
from histopolation.experiments.tables import Table
from histopolation.helpers.string import float_value
from histopolation.interfaces.path import CsvFile

log = logging.getLogger(__name__)


class TableSource(Source[CsvFile, Table]):
    """Numeric CSV tables with a header row; floats written with 17 significant digits."""

    label = "Table file"

    def read(self, source: CsvFile) -> Table:
        self.require(source)
        with open(source.path, encoding="utf-8", newline="") as table_file:
            lines = [cells for cells in csv.reader(table_file) if len(cells) > 0]
        if len(lines) < 2:
            raise ValidationError(f"Table file {source.path} has no data rows")
        header, rows = lines[0], []
        for row, cells in enumerate(lines[1:], start=2):
            if len(cells) != len(header):
                raise ParseError(f"Expected {len(header)} columns, got {len(cells)}", row=row)
            try:
                rows.append([float(cell) for cell in cells])
            except ValueError as ex:
                raise ParseError(f"Non-numeric cell in {cells}", row=row) from ex
        return Table(tuple(cell.strip() for cell in header), np.array(rows))

    def write(self, source: CsvFile, content: Table):
        source.create_parent()
        with open(source.path, encoding="utf-8", mode="w", newline="") as table_file:
            writer = csv.writer(table_file, lineterminator="\n")
            writer.writerow(content.header)
            for row in content.rows:
                writer.writerow([float_value(value) for value in row])
        log.debug("Wrote %s rows to %s", len(content.rows), source.name)


def save_table(table: Table, path: str):
    TableSource().write(CsvFile(path), table)


def load_table(path: str) -> Table:
    return TableSource().read(CsvFile(path))
