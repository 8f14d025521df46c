"""
Base class for the reduction stages.

Every stage reads one text artifact, writes one text artifact, and records the
quantities it instantiates into a shared ReportLog. Subclasses live next to the domain
code they drive (vectorsum, rmcsp, expander, pihchain).
"""
import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, MutableMapping, Optional, Tuple

from gapchain import log
from gapchain.config import PipelineConfig
from gapchain.graphs import ExplicitGroupedGraph, GroupedGraph
from gapchain.report_log import ReportLog
from gapchain.utilities import check_budget


class ContextAdapter(logging.LoggerAdapter):
    """Prefix every record with the stage name."""

    def process(
        self, msg: Any, kwargs: MutableMapping[str, Any]
    ) -> Tuple[Any, MutableMapping[str, Any]]:
        return "[%s] %s" % (self.extra["stage"], msg), kwargs  # type: ignore[index]


class BaseStage(ABC):
    """
    One reduction step: `run` turns an input artifact into an output artifact.

    Subclasses set `name` (the chain name and log prefix) and `input_kind`, record the
    quantities they instantiate with `record`, and go through `materialize` for any
    implicit graph they export.
    """

    name = "stage"
    input_kind = "text"

    def __init__(
        self, config: Optional[PipelineConfig] = None, report: Optional[ReportLog] = None
    ) -> None:
        self.config = (config or PipelineConfig()).validate()
        self.report = report if report is not None else ReportLog()
        self.log = ContextAdapter(log, {"stage": self.name})
        # Side artifacts keyed by file suffix, e.g. ".disperser"
        self.extra_outputs: Dict[str, str] = {}

    @abstractmethod
    def run(self, text: str) -> str:
        """Transform the input artifact into the output artifact."""
        raise NotImplementedError

    def __call__(self, text: str) -> str:
        self.log.info(f"start on {len(text)} bytes of {self.input_kind}")
        out = self.run(text)
        self.log.info(f"done, {len(out)} bytes written")
        return out

    def record(self, key: str, value: Any, formula: Optional[str] = None) -> None:
        self.report.record(key, value, formula)

    def summary(self, text: str) -> None:
        self.report.summary(text)

    def guard_materialize(self, what: str, needed: int) -> None:
        check_budget(what, needed, self.config.budget_materialize)

    def materialize(self, graph: GroupedGraph, what: str = "output graph") -> ExplicitGroupedGraph:
        """Explicit copy of an implicit graph, refused above the materialization budget."""
        self.guard_materialize(f"{what} vertices", graph.vertex_count())
        return graph.materialize(
            budget=self.config.budget_materialize, pair_budget=self.config.budget_enum
        )
