import functools
import logging
from datetime import datetime

from histopolation.errors import HistopolationError
from histopolation.helpers.logs import log_begin, log_end

log = logging.getLogger(__name__)


def execution(message, start_message=None):
    """Logs the wall time of a service method; ``self.name`` is the log context."""

    def actual_decorator(func):
        @functools.wraps(func)
        def execution_time(self, *args, **kwargs):
            start_time = datetime.now()
            context = getattr(self, "name", None)
            if start_message is not None:
                log.info(log_begin(context, start_message, start_time))
            try:
                result = func(self, *args, **kwargs)
            except HistopolationError:
                log.debug(log_end(context, f"{func.__name__} aborted", start_time))
                raise
            log.info(log_end(context, message, start_time))
            return result

        return execution_time

    return actual_decorator
