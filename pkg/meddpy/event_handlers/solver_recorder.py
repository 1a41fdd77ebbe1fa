"""solver_recorder.py: A generic solver event recorder"""

from meddpy.solver_event_handler import SolverEventHandler


class SolverRecorder(SolverEventHandler):
    """Keeps a list of records and writes them as CSV rows.

    Subclasses append to ``records`` from the events they handle and
    implement ``get_csv_header`` and ``format_record`` (a list of rows).
    """
    def __init__(self):
        self.records = []

    def get_csv_header(self):
        raise NotImplementedError

    def format_record(self, record):
        raise NotImplementedError

    def write_csv(self, outfile):
        """Write the header and every record."""
        self.write_csv_header(outfile)
        self.append_csv(outfile, clear=False)

    def write_csv_header(self, outfile):
        outfile.write(self.get_csv_header())

    def append_csv(self, outfile, clear=True):
        for record in self.records:
            for row in self.format_record(record):
                outfile.write(','.join(row) + '\n')
        if clear:
            self.records = []
