"""Miscellaneous utility functions."""
from typing import (
    Any,
    AnyStr,
    Callable,
    Dict,
    List,
    Optional,
    TypeVar,
    Union,
    cast,
)
from typing import TYPE_CHECKING
from glob import glob
import functools
import hashlib
import io
import os
import sys

import textfsm

from gapchain import log
from gapchain.exceptions import BudgetExceeded
from gapchain.gapchain_globals import CFG_ENV_VAR, CFG_FILE_NAMES

# For decorators
F = TypeVar("F", bound=Callable[..., Any])

if TYPE_CHECKING:
    from os import PathLike

REPORT_TEMPLATE = os.path.join(os.path.dirname(__file__), "templates", "report.textfsm")


def load_yaml_file(yaml_file: Union[str, bytes, "PathLike[Any]"]) -> Any:
    """Read YAML file."""
    try:
        import yaml
    except ImportError:
        sys.exit("Unable to import yaml module.")
    try:
        with io.open(yaml_file, "rt", encoding="utf-8") as fname:
            return yaml.safe_load(fname)
    except IOError:
        sys.exit("Unable to open YAML file")


def find_cfg_file(
    file_name: Union[str, bytes, "PathLike[Any]", None] = None
) -> Union[str, bytes, "PathLike[Any]"]:
    """
    Search for the gapchain configuration file in the following order:
    GAPCHAIN_CFG environment variable
    Current directory
    Home directory
    Look for file named: .gapchain.yml or gapchain.yml
    Also allow GAPCHAIN_CFG to point directly at a file
    """
    if file_name and os.path.isfile(file_name):
        return file_name
    optional_path = os.environ.get(CFG_ENV_VAR, "")
    if os.path.isfile(optional_path):
        return optional_path
    search_paths = [optional_path, ".", os.path.expanduser("~")]
    search_paths = [path for path in search_paths if path]
    for path in search_paths:
        files: List[str] = []
        for name in CFG_FILE_NAMES:
            files += glob(f"{path}/{name}")
        if files:
            return files[0]
    raise IOError(
        ".gapchain.yml file not found in GAPCHAIN_CFG environment variable directory,"
        " current directory, or home directory."
    )


def ensure_dir_exists(verify_dir: str) -> None:
    """Ensure directory exists. Create if necessary."""
    if not os.path.exists(verify_dir):
        os.makedirs(verify_dir)
    else:
        if not os.path.isdir(verify_dir):
            raise ValueError(f"{verify_dir} is not a directory")


def write_bytes(out_data: AnyStr, encoding: str = "ascii") -> bytes:
    """Encode report text for a binary sink."""
    if isinstance(out_data, str):
        if encoding == "utf-8":
            return out_data.encode("utf-8")
        return out_data.encode("ascii", "ignore")
    elif isinstance(out_data, bytes):
        return out_data
    msg = f"Invalid value for out_data neither unicode nor byte string: {str(out_data)}"
    raise ValueError(msg)


def derive_seed(seed: int, label: str) -> int:
    """Split one pipeline seed into an independent 64-bit stream per stage label."""
    digest = hashlib.sha256(f"{seed}:{label}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def check_budget(what: str, needed: int, budget: int) -> None:
    """Refuse an enumeration of `needed` items when it exceeds `budget`."""
    if needed > budget:
        log.debug(f"budget refusal for {what}: {needed} > {budget}")
        raise BudgetExceeded(what, needed, budget)


def fsm_to_dict(header: List[str], rows: List[List[str]]) -> List[Dict[str, str]]:
    """Converts TextFSM rows to list of dictionaries keyed by lower-case header."""
    return_list = []
    for row in rows:
        temp_dict = {}
        for index, element in enumerate(row):
            temp_dict[header[index].lower()] = element
        return_list.append(temp_dict)
    return return_list


def parse_report(raw_output: str, template: Optional[str] = None) -> List[Dict[str, str]]:
    """Parse a gapchain report into structured data using TextFSM."""
    if template is None:
        template = REPORT_TEMPLATE
    with io.open(template, "rt", encoding="utf-8") as f:
        fsm = textfsm.TextFSM(f)
    rows = fsm.ParseText(raw_output)
    return fsm_to_dict(fsm.header, rows)


def report_as_dict(raw_output: str) -> Dict[str, str]:
    """Flatten a parsed report into key -> value."""
    return {row["key"]: row["val"] for row in parse_report(raw_output)}


def log_call(func: F) -> F:
    """Debug-log entry into a stage method."""

    @functools.wraps(func)
    def wrapper_decorator(*args: Any, **kwargs: Any) -> Any:
        log.debug(f"calling {func.__qualname__}")
        return func(*args, **kwargs)

    return cast(F, wrapper_decorator)
