import csv
import logging
import math

from histopolation.data.base import Source
from histopolation.domains.models import AverageSample, Domain, DomainKind, HistoProblem
from histopolation.errors import ParseError, ValidationError
from histopolation.helpers.string import float_value
from histopolation.interfaces.path import CsvFile

log = logging.getLogger(__name__)

HEADER_KIND = "kind"


def _parse_float(cell: str, row: int) -> float:
    try:
        value = float(cell)
    except ValueError as ex:
        raise ParseError(f'"{cell}" is not a number', row=row) from ex
    if not math.isfinite(value):
        raise ParseError(f'"{cell}" is not finite', row=row)
    return value


def parse_sample(cells: list[str], row: int) -> AverageSample:
    """``segment,c,h,v`` / ``box,c1..cd,h1..hd,v`` / ``ball,c1..cd,r,v``."""
    if len(cells) < 4:
        raise ParseError(f"Expected at least 4 columns, got {len(cells)}", row=row)
    try:
        kind = DomainKind(cells[0].strip().lower())
    except ValueError as ex:
        raise ParseError(f'Unknown domain kind "{cells[0]}"', row=row) from ex
    numbers = [_parse_float(cell, row) for cell in cells[1:]]
    value = numbers.pop()
    if kind == DomainKind.SEGMENT:
        if len(numbers) != 2:
            raise ParseError(f"Segment rows have 4 columns, got {len(cells)}", row=row)
        center, extent = numbers[:1], numbers[1:]
    elif kind == DomainKind.BOX:
        if len(numbers) % 2 != 0:
            raise ParseError(f"Box rows need as many half-widths as center coordinates, got {len(cells)} columns", row=row)
        dim = len(numbers) // 2
        center, extent = numbers[:dim], numbers[dim:]
    else:
        center, extent = numbers[:-1], numbers[-1:]
    try:
        return AverageSample(Domain(kind, tuple(center), tuple(extent)), value)
    except ValidationError as ex:
        raise ParseError(str(ex), row=row) from ex


def format_sample(sample: AverageSample) -> list[str]:
    domain = sample.domain
    numbers = [*domain.center, *domain.extent, sample.value]
    return [domain.kind.value, *(float_value(number) for number in numbers)]


def header_for(problem: HistoProblem) -> list[str]:
    dim = problem.dim
    centers = [f"c{index}" for index in range(1, dim + 1)]
    if all(domain.is_ball for domain in problem.domains):
        extents = ["r"]
    else:
        extents = [f"e{index}" for index in range(1, dim + 1)]
    return [HEADER_KIND, *centers, *extents, "value"]


class SamplesSource(Source[CsvFile, HistoProblem]):
    label = "Samples file"

    def read(self, source: CsvFile) -> HistoProblem:
        self.require(source)
        samples = []
        with open(source.path, encoding="utf-8", newline="") as samples_file:
            for row, cells in enumerate(csv.reader(samples_file), start=1):
                if len(cells) == 0 or all(len(cell.strip()) == 0 for cell in cells):
                    continue
                if cells[0].strip().lower() == HEADER_KIND:
                    continue
                samples.append(parse_sample(cells, row))
        if len(samples) == 0:
            raise ValidationError(f"Samples file {source.path} contains no samples")
        log.debug("Read %s samples from %s", len(samples), source.name)
        return HistoProblem(tuple(samples))

    def write(self, source: CsvFile, content: HistoProblem):
        source.create_parent()
        with open(source.path, encoding="utf-8", mode="w", newline="") as samples_file:
            writer = csv.writer(samples_file, lineterminator="\n")
            writer.writerow(header_for(content))
            for sample in content.samples:
                writer.writerow(format_sample(sample))


def load_samples(path: str) -> HistoProblem:
    return SamplesSource().read(CsvFile(path))


def save_samples(problem: HistoProblem, path: str):
    SamplesSource().write(CsvFile(path), problem)
