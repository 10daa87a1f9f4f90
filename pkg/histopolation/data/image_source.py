import logging

import imageio.v3 as iio
import numpy as np

from histopolation.data.base import Source
from histopolation.errors import ParseError, ValidationError
from histopolation.experiments.imaging import ImageGrid
from histopolation.interfaces.path import FileModel, PgmFile, PngFile

log = logging.getLogger(__name__)

IMAGE_FILES = (PgmFile, PngFile)


def image_file(path: str) -> FileModel:
    for file_type in IMAGE_FILES:
        if file_type.is_model(path):
            return file_type(path)
    known = ", ".join(file_type.extension() for file_type in IMAGE_FILES)
    raise ValidationError(f'Unsupported image file "{path}" (known: {known})')


def _as_gray(pixels: np.ndarray) -> np.ndarray:
    if pixels.ndim == 3:
        pixels = pixels[..., :3].mean(axis=-1) if pixels.shape[-1] >= 3 else pixels[..., 0]
    if pixels.ndim != 2:
        raise ParseError(f"Expected a grayscale image, got pixel array of shape {pixels.shape}")
    return pixels


class ImageSource(Source[FileModel, ImageGrid]):
    """Grayscale images as pixel averages in ``[0, 1]``; written as 8-bit."""

    label = "Image file"

    def read(self, source: FileModel) -> ImageGrid:
        self.require(source)
        try:
            raw = np.asarray(iio.imread(source.path))
        except (OSError, ValueError) as ex:
            raise ParseError(f"Cannot read image {source.path}: {ex}") from ex
        scale = float(np.iinfo(raw.dtype).max) if np.issubdtype(raw.dtype, np.integer) else 1.0
        pixels = _as_gray(raw.astype(np.float64)) / scale
        log.debug("Read %sx%s image from %s", pixels.shape[1], pixels.shape[0], source.name)
        return ImageGrid(pixels)

    def write(self, source: FileModel, content: ImageGrid):
        source.create_parent()
        pixels = np.round(content.clamped().values * 255.0).astype(np.uint8)
        iio.imwrite(source.path, pixels)
        log.debug("Wrote %sx%s image to %s", content.width, content.height, source.name)


def load_image(path: str) -> ImageGrid:
    return ImageSource().read(image_file(path))


def save_image(grid: ImageGrid, path: str):
    ImageSource().write(image_file(path), grid)
