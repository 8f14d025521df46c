import io
from fractions import Fraction
from typing import Any, List, Optional, TextIO, Union

from gapchain.utilities import write_bytes


def format_value(value: Any) -> str:
    """Render a report value as a single token without spaces."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, (tuple, list)):
        return ",".join(format_value(v) for v in value) if value else "-"
    if value is None:
        return "none"
    return str(value).replace(" ", "_")


class ReportLog:
    """
    Collects `key = value [formula: ...]` lines and `#` summary lines.

    Lines are always kept in memory (see `text`); they are also written to a file
    name or a buffer when one is given.
    """

    def __init__(
        self,
        file_name: Optional[str] = None,
        buffered_io: Optional[Union[io.BufferedIOBase, io.TextIOBase]] = None,
        file_mode: str = "write",
        file_encoding: str = "utf-8",
    ) -> None:
        self.file_name = file_name
        self.file_mode = file_mode
        self.file_encoding = file_encoding
        self.lines: List[str] = []
        self._report_close = False

        # Actual file/file-handle/buffered-IO that will be written to.
        self.report_log: Union[io.BufferedIOBase, io.TextIOBase, TextIO, None]
        if file_name is None and buffered_io is not None:
            self.report_log = buffered_io
        else:
            self.report_log = None

    def open(self) -> None:
        """Open the report file."""
        if self.file_name is None:
            return None
        mode = "a" if self.file_mode == "append" else "w"
        self.report_log = open(self.file_name, mode=mode, encoding=self.file_encoding)
        self._report_close = True

    def close(self) -> None:
        """Close the report file (if it is a file that we opened)."""
        if self.report_log is not None and self._report_close:
            self.report_log.close()
            self.report_log = None

    def __enter__(self) -> "ReportLog":
        self.open()
        return self

    def __exit__(self, *exc: Any) -> None:
        self.close()

    def write(self, data: str) -> None:
        self.lines.append(data)
        if self.report_log is None:
            return
        if isinstance(self.report_log, io.BufferedIOBase):
            self.report_log.write(write_bytes(data + "\n", encoding=self.file_encoding))
        else:
            self.report_log.write(data + "\n")
        self.report_log.flush()

    def record(self, key: str, value: Any, formula: Optional[str] = None) -> None:
        line = f"{key} = {format_value(value)}"
        if formula:
            line += f" [formula: {formula}]"
        self.write(line)

    def summary(self, text: str) -> None:
        self.write(f"# {text}")

    @property
    def text(self) -> str:
        return "".join(line + "\n" for line in self.lines)
