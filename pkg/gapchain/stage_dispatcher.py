"""Controls selection of the stage class for each reduction chain."""
import logging
from typing import Any, Dict, List, Optional, Type

from gapchain.base_stage import BaseStage
from gapchain.config import PipelineConfig
from gapchain.exceptions import GapchainBaseException
from gapchain.expander.expander_stage import AmplifyStage
from gapchain.pihchain.pihchain_stage import (
    Biclique2DensestStage,
    Clique2BicliqueStage,
    CompressStage,
)
from gapchain.report_log import ReportLog
from gapchain.rmcsp.rmcsp_stage import Vs2CliqueStage
from gapchain.utilities import log_call
from gapchain.vectorsum.vectorsum_stage import Sat2VsStage

# The keys of this dictionary are the supported chain names
STAGE_MAPPER: Dict[str, Type[BaseStage]] = {
    "sat2vs": Sat2VsStage,
    "vs2clique": Vs2CliqueStage,
    "amplify": AmplifyStage,
    "clique2biclique": Clique2BicliqueStage,
    "compress": CompressStage,
    "biclique2densest": Biclique2DensestStage,
}

chains = list(STAGE_MAPPER.keys())
chains_str = "\n" + "\n".join(chains)


def stage_dispatcher(chain: str) -> Type[BaseStage]:
    """Select the class to be instantiated based on the chain name."""
    return STAGE_MAPPER[chain]


def StageHandler(
    chain: str, config: Optional[PipelineConfig] = None, report: Optional[ReportLog] = None
) -> BaseStage:
    """Factory function selects the proper class and creates object based on chain."""
    if chain not in STAGE_MAPPER:
        raise ValueError(
            "Unsupported 'chain' currently supported chains are: {}".format(chains_str)
        )
    return stage_dispatcher(chain)(config, report)


def StageLogOnly(
    log_file: str = "gapchain.log",
    log_level: Optional[int] = None,
    log_format: Optional[str] = None,
    **kwargs: Any,
) -> Optional[BaseStage]:
    """
    Dispatcher function that will return either: stage object or None

    Excluding errors in logging configuration should never generate an exception
    all errors should be logged.
    """
    if log_level is None:
        log_level = logging.ERROR
    if log_format is None:
        log_format = "%(asctime)s %(levelname)s %(name)s %(message)s"

    logging.basicConfig(filename=log_file, level=log_level, format=log_format)
    logger = logging.getLogger(__name__)

    chain = kwargs.get("chain")
    try:
        stage = StageHandler(**kwargs)
        logger.info(f"stage {chain} ready")
        return stage
    except GapchainBaseException as e:
        logger.error(f"Stage {chain} could not be created\n\n{str(e)}")
        return None
    except Exception as e:
        logger.error(f"An unknown exception occurred creating stage {chain}:\n\n{str(e)}")
        return None


def StageUnify(chain: str, text: str, **kwargs: Any) -> str:
    """Run one stage; any error that is not already a gapchain error is wrapped into one."""
    try:
        return StageHandler(chain, **kwargs)(text)
    except GapchainBaseException:
        raise
    except Exception as e:
        msg = f"An unknown exception occurred in stage {chain}:\n\n{str(e)}"
        raise GapchainBaseException(msg)


@log_call
def run_chain(
    chain_names: List[str],
    text: str,
    config: Optional[PipelineConfig] = None,
    report: Optional[ReportLog] = None,
) -> Dict[str, Any]:
    """
    Run stages back to back, feeding each output to the next stage.

    Returns the final artifact under "output" and the side artifacts of every stage
    under "extra", keyed by file suffix.
    """
    report = report if report is not None else ReportLog()
    extra: Dict[str, str] = {}
    for name in chain_names:
        stage = StageHandler(name, config, report)
        report.summary(f"stage {name}")
        try:
            text = stage(text)
        except GapchainBaseException:
            raise
        except Exception as e:
            raise GapchainBaseException(f"An unknown exception occurred in stage {name}:\n\n{e}")
        extra.update(stage.extra_outputs)
    return {"output": text, "extra": extra, "report": report}
