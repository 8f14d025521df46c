import logging

# Logging configuration
log = logging.getLogger(__name__)  # noqa
log.addHandler(logging.NullHandler())  # noqa

from gapchain.exceptions import (  # noqa: E402
    BudgetExceeded,
    CompletenessError,
    ConfigInvalidException,
    ConvergenceError,
    DimensionMismatch,
    FieldError,
    GapchainBaseException,
    ParseError,
    PreconditionError,
    SamplingFailed,
    VerificationFailed,
)
from gapchain.config import PipelineConfig  # noqa: E402
from gapchain.stage_dispatcher import (  # noqa: E402
    STAGE_MAPPER,
    StageHandler,
    StageLogOnly,
    StageUnify,
    chains,
)
from gapchain.commands import (  # noqa: E402
    cmd_adj,
    cmd_ldt,
    cmd_oracle,
    cmd_reduce,
    cmd_verify,
)

__version__ = "0.1.0"
__all__ = (
    "PipelineConfig",
    "STAGE_MAPPER",
    "StageHandler",
    "StageLogOnly",
    "StageUnify",
    "chains",
    "cmd_reduce",
    "cmd_verify",
    "cmd_oracle",
    "cmd_adj",
    "cmd_ldt",
    "GapchainBaseException",
    "ParseError",
    "ConfigInvalidException",
    "PreconditionError",
    "FieldError",
    "DimensionMismatch",
    "BudgetExceeded",
    "VerificationFailed",
    "CompletenessError",
    "SamplingFailed",
    "ConvergenceError",
)
