FILL_SPACE = " "
FILL_HYPHEN = "-"

ALIGN_LEFT = "<"
ALIGN_RIGHT = ">"
ALIGN_CENTRE = "^"

SIGNIFICANT_DIGITS = 17


def fixed_length(value: str, width: int, fill: str = FILL_SPACE, align: str = ALIGN_LEFT) -> str:
    return f"{value:{fill}{align}{width}}"


def float_value(value: float, digits: int = SIGNIFICANT_DIGITS) -> str:
    """Decimal text of ``value`` with ``digits`` significant digits (round-trip safe for 17)."""
    return f"{float(value):.{digits}g}"


def parse_dims(value: str) -> tuple[int, int]:
    """Parses ``WxH`` into ``(width, height)``."""
    parts = value.lower().split("x")
    if len(parts) != 2:
        raise ValueError(f'Expected dimensions as "WxH", got "{value}"')
    width, height = (int(part) for part in parts)
    if width <= 0 or height <= 0:
        raise ValueError(f'Dimensions must be positive, got "{value}"')
    return width, height


def parse_int_list(value: str) -> list[int]:
    return [int(part) for part in value.split(",") if len(part.strip()) > 0]


def parse_axis(value: str) -> tuple[float, float, int]:
    """Parses ``start:stop:count``."""
    parts = value.split(":")
    if len(parts) != 3:
        raise ValueError(f'Expected an axis as "start:stop:count", got "{value}"')
    start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 1:
        raise ValueError(f'Axis count must be positive, got "{value}"')
    return start, stop, count


def parse_axes(value: str) -> list[tuple[float, float, int]]:
    """Comma-separated ``start:stop:count`` axes, one per coordinate."""
    return [parse_axis(part.strip()) for part in value.split(",") if len(part.strip()) > 0]


def parse_float_list(value: str) -> list[float]:
    return [float(part) for part in value.split(",") if len(part.strip()) > 0]
