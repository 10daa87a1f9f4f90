import json

import imageio.v3 as iio
import numpy as np
import pytest

from histopolation.data.image_source import ImageSource, image_file, load_image, save_image
from histopolation.data.json_source import JsonSource
from histopolation.data.samples_source import load_samples, parse_sample, save_samples
from histopolation.data.table_source import load_table, save_table
from histopolation.domains.models import Domain, DomainKind, HistoProblem, uniform_segments
from histopolation.errors import ParseError, ValidationError
from histopolation.experiments.imaging import ImageGrid
from histopolation.experiments.tables import Table
from histopolation.interfaces.path import CsvFile, JsonFile, PgmFile, PngFile


class TestParseSample:
    def test_segment_row(self):
        sample = parse_sample(["segment", "0.5", "0.25", "2.0"], row=1)

        assert sample.domain == Domain.segment(0.5, 0.25)
        assert sample.value == 2.0

    def test_box_row(self):
        sample = parse_sample(["box", "0", "1", "0.5", "0.25", "3"], row=1)

        assert sample.domain == Domain.box((0.0, 1.0), (0.5, 0.25))

    def test_ball_row(self):
        sample = parse_sample(["BALL", "0", "1", "2", "0.5", "-1"], row=1)

        assert sample.domain.kind == DomainKind.BALL
        assert sample.domain.center == (0.0, 1.0, 2.0)
        assert sample.domain.radius == 0.5

    @pytest.mark.parametrize(
        ("cells", "match"),
        [
            (["segment", "0", "1"], "at least 4"),
            (["disk", "0", "1", "2"], "Unknown domain kind"),
            (["segment", "0", "x", "2"], "not a number"),
            (["segment", "0", "inf", "2"], "not finite"),
            (["segment", "0", "1", "2", "3"], "4 columns"),
            (["box", "0", "1", "0.5", "2"], "half-widths"),
            (["segment", "0", "-1", "2"], "positive"),
        ],
    )
    def test_bad_rows_name_the_row(self, cells, match):
        with pytest.raises(ParseError, match=match) as info:
            parse_sample(cells, row=7)

        assert info.value.row == 7
        assert str(info.value).startswith("Row 7")


class TestSamplesSource:
    def test_write_then_read(self, tmp_path):
        path = str(tmp_path / "samples.csv")
        problem = uniform_segments([-1.0, 0.0, 1.0], 0.5, [0.1, 1.0 / 3.0, -2.5])

        save_samples(problem, path)
        result = load_samples(path)

        assert result == problem

    def test_header_and_blank_lines_skipped(self, tmp_path):
        path = tmp_path / "samples.csv"
        path.write_text("kind,c1,e1,value\n\nsegment,0,0.5,1\nsegment,1,0.5,2\n", encoding="utf-8")

        result = load_samples(str(path))

        assert result.size == 2
        assert np.array_equal(result.values, [1.0, 2.0])

    def test_ball_header(self, tmp_path):
        path = tmp_path / "balls.csv"
        domains = [Domain.ball((0.0, 0.0), 0.5), Domain.ball((1.0, 0.0), 0.5)]

        save_samples(HistoProblem.from_domains(domains, [1.0, 2.0]), str(path))

        assert path.read_text(encoding="utf-8").splitlines()[0] == "kind,c1,c2,r,value"

    def test_missing_file(self):
        with pytest.raises(ValidationError, match="does not exist"):
            load_samples("/not/there/samples.csv")

    def test_empty_file(self, tmp_path):
        path = tmp_path / "samples.csv"
        path.write_text("kind,c1,e1,value\n", encoding="utf-8")

        with pytest.raises(ValidationError, match="no samples"):
            load_samples(str(path))

    def test_bad_row_number_counts_header(self, tmp_path):
        path = tmp_path / "samples.csv"
        path.write_text("kind,c1,e1,value\nsegment,0,0.5,1\nsegment,1,0.5,nope\n", encoding="utf-8")

        with pytest.raises(ParseError, match="Row 3"):
            load_samples(str(path))


class TestTableSource:
    def test_values_survive_seventeen_digits(self, tmp_path):
        path = str(tmp_path / "out" / "table.csv")
        rows = np.array([[1.0, np.pi], [2.0, 1.0 / 3.0]])

        save_table(Table(("n", "value"), rows), path)
        result = load_table(path)

        assert result.header == ("n", "value")
        assert np.array_equal(result.rows, rows)

    def test_nan_cells(self, tmp_path):
        path = str(tmp_path / "table.csv")

        save_table(Table(("a", "b"), np.array([[np.nan, 1.0]])), path)

        assert np.isnan(load_table(path).rows[0, 0])

    def test_column_count_checked(self, tmp_path):
        path = tmp_path / "table.csv"
        path.write_text("a,b\n1,2\n3\n", encoding="utf-8")

        with pytest.raises(ParseError, match="Row 3"):
            load_table(str(path))

    def test_header_only(self, tmp_path):
        path = tmp_path / "table.csv"
        path.write_text("a,b\n", encoding="utf-8")

        with pytest.raises(ValidationError, match="no data rows"):
            load_table(str(path))

    def test_table_checks_header(self):
        with pytest.raises(ValidationError, match="columns"):
            Table(("a",), np.zeros((2, 2)))

    def test_column(self):
        table = Table(("a", "b"), np.array([[1.0, 2.0], [3.0, 4.0]]))

        assert np.array_equal(table.column("b"), [2.0, 4.0])


class TestImageSource:
    def test_image_file_types(self):
        assert isinstance(image_file("scan.PGM"), PgmFile)
        assert isinstance(image_file("scan.png"), PngFile)
        with pytest.raises(ValidationError, match="Unsupported image"):
            image_file("scan.tiff")

    @pytest.mark.parametrize("name", ["image.pgm", "image.png"])
    def test_write_then_read_is_quantized(self, tmp_path, name):
        path = str(tmp_path / name)
        values = np.array([[0.0, 0.5, 1.0], [0.25, 0.75, 0.1]])

        save_image(ImageGrid(values), path)
        result = load_image(path)

        assert result.values.shape == (2, 3)
        assert np.max(np.abs(result.values - values)) <= 0.5 / 255.0 + 1e-12

    def test_write_clamps(self, tmp_path):
        path = str(tmp_path / "image.png")

        save_image(ImageGrid(np.array([[-0.3, 1.7]])), path)

        assert np.array_equal(load_image(path).values, [[0.0, 1.0]])

    def test_rgb_is_averaged_to_gray(self, tmp_path):
        path = str(tmp_path / "rgb.png")
        iio.imwrite(path, np.array([[[255, 0, 0], [255, 255, 255]]], dtype=np.uint8))

        result = ImageSource().read(PngFile(path))

        assert np.allclose(result.values, [[1.0 / 3.0, 1.0]])

    def test_missing_image(self):
        with pytest.raises(ValidationError, match="does not exist"):
            load_image("/not/there/image.pgm")

    def test_corrupt_image(self, tmp_path):
        path = tmp_path / "broken.png"
        path.write_bytes(b"not an image")

        with pytest.raises(ParseError, match="Cannot read image"):
            load_image(str(path))


class TestJsonSource:
    def test_write_then_read(self, tmp_path):
        file = JsonFile(str(tmp_path / "config.json"))

        JsonSource().write(file, {"quadrature_nodes": 16})

        assert json.loads((tmp_path / "config.json").read_text(encoding="utf-8")) == {"quadrature_nodes": 16}
        assert JsonSource().read(file) == {"quadrature_nodes": 16}

    def test_file_models(self):
        assert CsvFile.is_model("a/b/table.CSV")
        assert CsvFile("a/b/table.csv").name_wo_extension == "table"
        assert JsonFile("a.json") == JsonFile("a.json")
        assert JsonFile("a.json") != CsvFile("a.csv")
