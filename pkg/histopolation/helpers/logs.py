import logging
from datetime import datetime

from histopolation.helpers.string import ALIGN_LEFT, ALIGN_RIGHT, fixed_length

log = logging.getLogger(__name__)


def get_time_log(message: str, width: int = 12) -> str:
    return fixed_length(message, width=width, align=ALIGN_RIGHT)


def get_time_msg(start: datetime) -> str:
    diff = (datetime.now() - start).total_seconds()
    return get_time_log(f"{diff: .2f} sec")


def log_time(message: str, start: datetime) -> str:
    return f"{message} in {get_time_msg(start)}"


def _context_message(
    context: str | None,
    message: str,
    width_context: int = 20,
    width_message: int = 60,
) -> str:
    name = fixed_length(context or "", width=width_context, align=ALIGN_LEFT)
    log_message = fixed_length(message, width=width_message, align=ALIGN_LEFT)
    return f"{name}: {log_message}"


def log_begin(context: str | None, message: str, start_time: datetime) -> str:
    message = _context_message(context, message)
    start_value = start_time.strftime("%H:%M:%S")
    return f"{message} at {get_time_log(start_value)}"


def log_end(context: str | None, message: str, start_time: datetime) -> str:
    message = _context_message(context, message)
    return log_time(message, start_time)


def log_problem_size(prefix: str, samples: int, dim: int, width: int = 8, suffix: str = "") -> str:
    sample_log = fixed_length(f"{samples}", width=width, align=ALIGN_RIGHT)
    message = f"{prefix} {sample_log} Domains / d = {dim}"
    if len(suffix) == 0:
        return message
    return f"{message} {suffix}"


def log_jitter(prefix: str, jitter: float, condition: float) -> str:
    if jitter > 0:
        return f"{prefix} jitter {jitter:.3e} / condition estimate {condition:.3e}"
    return f"{prefix} condition estimate {condition:.3e}"
