from datetime import datetime, timezone

from pythonjsonlogger.json import JsonFormatter


class CustomFormatter(JsonFormatter):
    def formatTime(self, record, datefmt=None):
        """
        Render record times in UTC, ISO format with milliseconds unless a datefmt is given
        """
        dt = datetime.fromtimestamp(record.created, timezone.utc)
        if datefmt:
            return dt.strftime(datefmt)
        return dt.isoformat(timespec="milliseconds")

