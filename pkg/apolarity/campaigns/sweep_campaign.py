import logging
import os
from datetime import datetime
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from apolarity.bundles.graded_map import ProjectionCenter, format_center
from apolarity.bundles.splitting import classify_codim_two, normal_splitting, stratum_of_splitting
from apolarity.campaigns.base_campaign import BaseCampaign
from apolarity.exceptions import (
    ApolarityError,
    DegenerateMap,
    InvalidCenter,
    ParameterOutOfRange,
    RankDeficientCombo,
)
from apolarity.secants.secant_spaces import (
    derive_seed,
    meets_curve,
    random_center,
    random_combo,
    sample_params_from,
    secant_center,
)
from apolarity.utils.settings import Settings


class SweepCampaign(BaseCampaign):
    """Frequency table of normal splittings over random centers."""

    def __init__(
        self,
        n: int,
        k: int,
        trials: int,
        seed: int,
        force_secant: Optional[int] = None,
        height: Optional[int] = None,
        output_dir: Optional[str] = None,
        omit_timing: bool = False,
        log_level: Optional[int] = None,
    ):
        """Initialize the sweep.

        Args:
            n (int): Degree of the rational normal curve
            k (int): Number of generators of the sampled centers
            trials (int): Number of sampled centers
            seed (int): Campaign seed
            force_secant (int, optional): Sample only inside s-secant P^(s-1) spans

        Raises:
            ParameterOutOfRange: If trials < 1, k is outside 1..n-3 or force_secant is outside k+1..n
        """
        super().__init__("sweep_campaign", output_dir, omit_timing, log_level)
        if trials < 1:
            raise ParameterOutOfRange(f"trials must be at least 1, got {trials}")
        if k < 1 or k > n - 3:
            raise ParameterOutOfRange(f"k = {k} outside 1..{n - 3} for n = {n}")
        if force_secant is not None and not k + 1 <= force_secant <= n:
            raise ParameterOutOfRange(f"secant span size {force_secant} outside {k + 1}..{n}")
        self.n, self.k, self.trials, self.seed = n, k, trials, seed
        self.force_secant = force_secant
        self.height = Settings.height(height)
        self.labelled = k == 2 and n >= 7
        self.samples: List[Dict[str, str]] = []
        self.rejected = 0
        self.disagreements: List[Dict[str, str]] = []

    @property
    def report_name(self) -> str:
        suffix = f"_secant{self.force_secant}" if self.force_secant else ""
        return f"sweep_n{self.n}_k{self.k}_seed{self.seed}{suffix}"

    def sample_center(self, rng: np.random.Generator) -> ProjectionCenter:
        if self.force_secant is None:
            return random_center(self.n, self.k, rng, self.height)
        s = self.force_secant
        for attempt in range(Settings.max_resamples()):
            params = sample_params_from(rng, s, self.height)
            combo = random_combo(rng, self.k, s, self.height)
            if meets_curve(combo):
                continue
            try:
                return secant_center(params, self.n, self.k, combo)
            except (RankDeficientCombo, InvalidCenter) as e:
                self.logger.warning(f"Resampling secant center (attempt {attempt + 1}): {e}")
        raise ApolarityError(f"no center inside a {s}-secant span within {Settings.max_resamples()} draws")

    def frequency_table(self) -> pd.DataFrame:
        columns = ["splitting", "stratum"]
        df = pd.DataFrame(self.samples, columns=columns)
        if df.empty:
            return pd.DataFrame(columns=columns + ["count"])
        table = df.groupby(columns).size().reset_index(name="count")
        return table.sort_values(["count", "splitting"], ascending=[False, True]).reset_index(drop=True)

    def to_document(self) -> Dict[str, Any]:
        table = self.frequency_table()
        return {
            "n": self.n,
            "k": self.k,
            "trials": self.trials,
            "seed": self.seed,
            "force_secant": self.force_secant,
            "accepted": len(self.samples),
            "rejected": self.rejected,
            "disagreements": self.disagreements,
            "frequencies": [
                {"splitting": row["splitting"], "stratum": row["stratum"], "count": int(row["count"])}
                for row in table.to_dict("records")
            ],
            "wall_time_ms": self.wall_time_ms,
        }

    def save_results(self, base_name: Optional[str] = None) -> None:
        """Save the sweep summary as JSON and the frequency table as CSV."""
        base_name = base_name or os.path.join(self.output_dir, self.report_name)
        self.write_document(f"{base_name}.json")
        csv_path = f"{base_name}.csv"
        self.frequency_table().to_csv(csv_path, index=False)
        self.logger.info(f"Data saved to {csv_path}")

    def save_partial_results(self) -> None:
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        self.logger.info(f"Saving partial results with {len(self.samples)} samples")
        self.save_results(os.path.join(self.output_dir, f"{self.report_name}_partial_{timestamp}"))

    def execute(self) -> None:
        self.logger.info(f"Sweeping n = {self.n}, k = {self.k}: {self.trials} centers, seed {self.seed}")
        for index in range(self.trials):
            rng = np.random.default_rng(derive_seed(self.seed, index))
            center = self.sample_center(rng)
            try:
                splitting = normal_splitting(center)
            except DegenerateMap as e:
                self.rejected += 1
                self.logger.warning(f"Sample {index} rejected: {e}")
                continue
            stratum = ""
            if self.labelled:
                from_splitting = stratum_of_splitting(splitting, self.n)
                from_ranks = classify_codim_two(center)
                stratum = from_splitting.value
                if from_ranks is not from_splitting:
                    self.logger.error(
                        f"Sample {index}: rank classifier says {from_ranks.value}, splitting says {stratum}"
                    )
                    self.disagreements.append(
                        {"center": format_center(center), "classifier": from_ranks.value, "splitting": stratum}
                    )
            self.samples.append({"splitting": str(splitting), "stratum": stratum})
        self.logger.info(
            f"{len(self.samples)} samples tabulated, {self.rejected} rejected, {len(self.disagreements)} disagreements"
        )


def run_sweep(
    n: int,
    k: int,
    trials: int,
    seed: int,
    force_secant: Optional[int] = None,
    height: Optional[int] = None,
    output_dir: Optional[str] = None,
    omit_timing: bool = False,
    log_level: Optional[int] = None,
) -> Dict[str, Any]:
    """Run a sweep, save its JSON summary and CSV table, and return the summary."""
    campaign = SweepCampaign(n, k, trials, seed, force_secant, height, output_dir, omit_timing, log_level)
    campaign.run()
    return campaign.to_document()


def main():
    """Entry point for the generic codimension-two sweep."""
    try:
        run_sweep(n=9, k=2, trials=200, seed=1)
    except Exception as e:
        logging.getLogger("sweep_campaign").error(f"Failed to complete sweep: {e}")
        raise


if __name__ == "__main__":
    main()
