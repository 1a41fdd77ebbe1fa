"""timestamp.py: UTC timestamps for run metadata."""

from datetime import datetime

import pytz

TIMESTAMP_FORMAT = '%Y-%m-%dT%H:%M:%S.%fZ'


class Timestamp(datetime):
    """A timezone-aware UTC datetime printed in ISO 8601 form."""
    def __str__(self):
        return self.strftime(TIMESTAMP_FORMAT)

    def __repr__(self):
        return "Timestamp: " + self.__str__()

    @classmethod
    def from_datetime(cls, dt):
        if dt.tzinfo is None:
            dt = pytz.utc.localize(dt)
        dt = dt.astimezone(pytz.utc)
        return cls(year=dt.year, month=dt.month, day=dt.day, hour=dt.hour,
                   minute=dt.minute, second=dt.second,
                   microsecond=dt.microsecond, tzinfo=pytz.utc)

    @classmethod
    def utc_now(cls):
        return cls.from_datetime(datetime.now(pytz.utc))
