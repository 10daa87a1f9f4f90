import logging
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor, as_completed

import numpy as np

log = logging.getLogger(__name__)

PARALLEL_THRESHOLD = 256
BLOCK_ROWS = 64


def row_blocks(count: int, block_rows: int = BLOCK_ROWS) -> list[slice]:
    return [slice(start, min(start + block_rows, count)) for start in range(0, count, block_rows)]


def fill_rows(
    rows: int,
    columns: int,
    compute: Callable[[slice], np.ndarray],
    max_workers: int = 1,
    threshold: int = PARALLEL_THRESHOLD,
) -> np.ndarray:
    """Fills a ``rows x columns`` matrix block by block; ``compute`` returns the rows of a slice."""
    matrix = np.empty((rows, columns))
    blocks = row_blocks(rows)
    if max_workers <= 1 or rows < threshold:
        for block in blocks:
            matrix[block] = compute(block)
        return matrix
    with ThreadPoolExecutor(thread_name_prefix="fill_rows", max_workers=max_workers) as executor:
        task = {executor.submit(compute, block): block for block in blocks}
        for future in as_completed(task):
            block = task[future]
            matrix[block] = future.result()
    log.debug("Filled %sx%s matrix in %s blocks on %s workers", rows, columns, len(blocks), max_workers)
    return matrix


def mirror_upper(matrix: np.ndarray) -> np.ndarray:
    """Symmetric matrix from the upper triangle (diagonal included)."""
    return np.triu(matrix) + np.triu(matrix, 1).T
