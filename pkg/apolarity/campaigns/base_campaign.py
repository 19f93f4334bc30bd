import json
import os
from datetime import datetime
from time import perf_counter
from typing import Any, Dict, Optional

from apolarity.utils.logging_config import setup_logging
from apolarity.utils.settings import Settings


class BaseCampaign:
    """Base class for all seeded experiment campaigns."""

    def __init__(
        self,
        log_file: str = "base_campaign",
        output_dir: Optional[str] = None,
        omit_timing: bool = False,
        log_level: Optional[int] = None,
    ):
        """Initialize the campaign with its logger and output location.

        Args:
            log_file (str): Name of the log file (without extension)
            output_dir (str, optional): Report directory (default: ``APOLAR_RESULTS_DIR``)
            omit_timing (bool): Report a wall time of 0 so reruns are byte identical
            log_level (int, optional): Logging level (default: ``APOLAR_LOG_LEVEL``)
        """
        self.logger = setup_logging(log_file, log_level)
        self.output_dir = output_dir or Settings.results_dir()
        self.omit_timing = omit_timing
        self.start_time: Optional[datetime] = None
        self.wall_time_ms = 0

    @property
    def report_name(self) -> str:
        """Base file name of the report (without extension)."""
        raise NotImplementedError("Subclasses must implement report_name")

    def to_document(self) -> Dict[str, Any]:
        """Structured report document."""
        raise NotImplementedError("Subclasses must implement to_document()")

    def write_document(self, path: str) -> str:
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        with open(path, "w") as file_json:
            json.dump(self.to_document(), file_json, indent=2, sort_keys=True)
            file_json.write("\n")
        self.logger.info(f"Report saved to {path}")
        return path

    def save_results(self) -> None:
        """Save the report to the output directory."""
        self.write_document(os.path.join(self.output_dir, f"{self.report_name}.json"))

    def save_partial_results(self) -> None:
        """Save partial results with timestamp when a campaign fails."""
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        path = os.path.join(self.output_dir, f"{self.report_name}_partial_{timestamp}.json")
        self.logger.info("Saving partial results...")
        self.write_document(path)

    def run(self) -> None:
        """Run the complete campaign and save its report."""
        self.start_time = datetime.now()
        started = perf_counter()
        try:
            self.execute()
            self.wall_time_ms = 0 if self.omit_timing else int((perf_counter() - started) * 1000)
            self.save_results()
        except (Exception, KeyboardInterrupt) as e:
            self.logger.error(f"An error occurred during the campaign: {e}")
            self.logger.info("Attempting to save partial results...")
            self.save_partial_results()
            if not isinstance(e, KeyboardInterrupt):
                raise
        finally:
            duration = datetime.now() - self.start_time
            self.logger.info(f"Campaign finished in {duration}")

    def execute(self) -> None:
        """Main campaign method to be implemented by child classes."""
        raise NotImplementedError("Subclasses must implement execute()")
