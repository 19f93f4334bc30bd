import logging
import sys
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from apolarity.apolar.apolar_ideal import (
    additive_decomposition,
    apolar_ideal,
    apolar_space,
    canonical_form,
    evaluate_gad,
    length,
    multiples,
)
from apolarity.bundles.enum_types import BundleKind
from apolarity.bundles.graded_map import ProjectionCenter, format_center
from apolarity.bundles.splitting import (
    SplittingType,
    expected_splitting,
    normal_splitting,
    rank_at_twist_zero,
    tangent_splitting,
)
from apolarity.campaigns.base_campaign import BaseCampaign
from apolarity.campaigns.enum_types import TheoremId
from apolarity.exactlin.qmatrix import QMatrix, kernel_basis, same_row_space
from apolarity.exactlin.qpoly import rational_roots, squarefree
from apolarity.exceptions import (
    ApolarityError,
    DegenerateMap,
    InvalidCenter,
    ParameterOutOfRange,
    RankDeficientCombo,
    UnsupportedTheorem,
)
from apolarity.forms.binary_form import BinaryForm, format_form, veronese
from apolarity.secants.secant_spaces import (
    derive_seed,
    meets_curve,
    random_center,
    random_combo,
    sample_params_from,
    secancy_profile,
    secant_center,
    tangent_point,
)
from apolarity.utils.settings import Settings

DEGENERATE = "DegenerateMap"


@dataclass
class TrialOutcome:
    passed: bool
    payload: str
    computed: str
    expected: str
    observed: Dict[str, Any] = field(default_factory=dict)


@dataclass
class VerificationReport:
    """Outcome of one campaign; passes + len(counterexamples) == trials."""

    theorem_id: str
    n: int
    k: int
    trials: int
    passes: int = 0
    counterexamples: List[Dict[str, str]] = field(default_factory=list)
    resolved_values: Dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    wall_time_ms: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _matrix(operators, degree: int) -> QMatrix:
    return QMatrix.from_rows([list(op.coeffs) for op in operators], cols=degree + 1)


class VerificationCampaign(BaseCampaign):
    """Seeded check of one statement about splittings or apolar ideals."""

    def __init__(
        self,
        theorem_id: str,
        n: int,
        k: int,
        trials: int,
        seed: int,
        height: Optional[int] = None,
        output_dir: Optional[str] = None,
        omit_timing: bool = False,
        log_level: Optional[int] = None,
    ):
        """Initialize the campaign and validate its parameters.

        Args:
            theorem_id (str): One of the TheoremId values
            n (int): Degree of the rational normal curve
            k (int): Number of generators of the center
            trials (int): Number of counted trials
            seed (int): Campaign seed; trial i uses derive_seed(seed, i)
            height (int, optional): Sampling height bound (default: ``APOLAR_HEIGHT``)

        Raises:
            UnsupportedTheorem: If theorem_id is unknown
            ParameterOutOfRange: If (n, k, trials) are outside the statement's range
        """
        try:
            self.theorem = TheoremId(theorem_id)
        except ValueError as e:
            raise UnsupportedTheorem(f"unknown theorem id {theorem_id!r}") from e
        super().__init__("verification_campaign", output_dir, omit_timing, log_level)
        self.n, self.k, self.trials, self.seed = n, k, trials, seed
        self.height = Settings.height(height)
        self._check_range()
        self.report = VerificationReport(theorem_id=self.theorem.value, n=n, k=k, trials=trials, seed=seed)
        self.trial_functions: Dict[TheoremId, Callable[[np.random.Generator, int], Optional[TrialOutcome]]] = {
            TheoremId.POINT: self.trial_point,
            TheoremId.POINT_SPECIAL: self.trial_point_special,
            TheoremId.RANK3: lambda rng, index: self.trial_secant_normal(rng, 3),
            TheoremId.RANK4: lambda rng, index: self.trial_secant_normal(rng, 4),
            TheoremId.RANK5: self.trial_rank5,
            TheoremId.CODIM3_RANK4: lambda rng, index: self.trial_secant_normal(rng, 4),
            TheoremId.MAINRESULT: lambda rng, index: self.trial_secant_normal(rng, self.k + 1),
            TheoremId.MAINRESULT_LITERAL: self.trial_mainresult_literal,
            TheoremId.MAINRESULT_TG: self.trial_tangent,
            TheoremId.CI: self.trial_complete_intersection,
            TheoremId.SYLVESTER: self.trial_sylvester,
        }

    def _check_range(self) -> None:
        n, k = self.n, self.k
        if self.trials < 1:
            raise ParameterOutOfRange(f"trials must be at least 1, got {self.trials}")
        theorem = self.theorem
        if theorem in (TheoremId.CI, TheoremId.SYLVESTER):
            low = 1 if theorem is TheoremId.CI else 3
            if not low <= n <= 12:
                raise ParameterOutOfRange(f"{theorem.value} needs {low} <= n <= 12, got n = {n}")
            return
        if k < 1 or k > n - 3:
            raise ParameterOutOfRange(f"k = {k} outside 1..{n - 3} for n = {n}")
        ranges = {
            TheoremId.POINT: (k == 1 and n >= 5, "k = 1 and n >= 5"),
            TheoremId.POINT_SPECIAL: (k == 1 and n >= 5, "k = 1 and n >= 5"),
            TheoremId.RANK3: (k == 2 and n >= 7, "k = 2 and n >= 7"),
            TheoremId.RANK4: (k == 2 and n >= 7, "k = 2 and n >= 7"),
            TheoremId.RANK5: (k == 2 and n >= 9, "k = 2 and n >= 9"),
            TheoremId.CODIM3_RANK4: (k == 3 and n >= 7, "k = 3 and n >= 7"),
            TheoremId.MAINRESULT: (
                n - 1 <= 3 * k <= 3 * (n - 3) and 2 * (k + 1) <= n + 1,
                "n - 1 <= 3k <= 3(n - 3) and 2(k + 1) <= n + 1",
            ),
            TheoremId.MAINRESULT_LITERAL: (
                n - 1 <= 3 * k <= 3 * (n - 3) and 2 * (k + 2) <= n + 1,
                "n - 1 <= 3k <= 3(n - 3) and 2(k + 2) <= n + 1",
            ),
            TheoremId.MAINRESULT_TG: (2 * k <= n, "2k <= n"),
        }
        allowed, description = ranges[theorem]
        if not allowed:
            raise ParameterOutOfRange(f"{theorem.value} needs {description}, got n = {n}, k = {k}")

    @property
    def report_name(self) -> str:
        return f"{self.theorem.value}_n{self.n}_k{self.k}_seed{self.seed}"

    def to_document(self) -> Dict[str, Any]:
        self.report.wall_time_ms = self.wall_time_ms
        return self.report.to_dict()

    def secant_hypothesis_center(self, rng: np.random.Generator, s: int) -> Optional[ProjectionCenter]:
        """A center inside an s-secant P^(s-1) and in no smaller secant space, or None to resample."""
        params = sample_params_from(rng, s, self.height)
        combo = random_combo(rng, self.k, s, self.height)
        if meets_curve(combo):
            return None
        try:
            center = secant_center(params, self.n, self.k, combo)
        except (RankDeficientCombo, InvalidCenter):
            return None
        if secancy_profile(center).min_degree != s:
            return None
        return center

    def compare(self, center: ProjectionCenter, computed: SplittingType, expected: SplittingType) -> TrialOutcome:
        return TrialOutcome(
            passed=computed == expected,
            payload=format_center(center),
            computed=str(computed),
            expected=str(expected),
            observed={"top_degree": computed.degrees[0]},
        )

    def trial_point(self, rng: np.random.Generator, index: int) -> Optional[TrialOutcome]:
        center = random_center(self.n, 1, rng, self.height)
        if length(center.generators[0]) < 3:
            return None
        expected = expected_splitting(BundleKind.NORMAL, self.n, 1)
        return self.compare(center, normal_splitting(center), expected)

    def trial_point_special(self, rng: np.random.Generator, index: int) -> Optional[TrialOutcome]:
        """Secant points on even trials, tangent points on odd ones; the generic splitting must fail."""
        n = self.n
        first, second = sample_params_from(rng, 2, self.height)
        if index % 2 == 0:
            weight = int(rng.integers(1, self.height + 1)) * (1 if rng.integers(0, 2) else -1)
            f = veronese(*first, n) + veronese(*second, n).scale(weight)
        else:
            f = tangent_point(first, n, second)
        try:
            center = ProjectionCenter(n, 1, (f,))
        except InvalidCenter:
            return None
        generic = expected_splitting(BundleKind.NORMAL, n, 1)
        try:
            computed = str(normal_splitting(center))
        except DegenerateMap:
            computed = DEGENERATE
        return TrialOutcome(
            passed=computed != str(generic),
            payload=format_center(center),
            computed=computed,
            expected=f"not {generic}",
        )

    def trial_secant_normal(self, rng: np.random.Generator, s: int) -> Optional[TrialOutcome]:
        center = self.secant_hypothesis_center(rng, s)
        if center is None:
            return None
        expected = expected_splitting(BundleKind.NORMAL, self.n, self.k, s)
        return self.compare(center, normal_splitting(center), expected)

    def trial_rank5(self, rng: np.random.Generator, index: int) -> Optional[TrialOutcome]:
        center = self.secant_hypothesis_center(rng, 5)
        if center is None or rank_at_twist_zero(center, BundleKind.NORMAL) != 5:
            return None
        expected = expected_splitting(BundleKind.NORMAL, self.n, 2, 5)
        return self.compare(center, normal_splitting(center), expected)

    def trial_mainresult_literal(self, rng: np.random.Generator, index: int) -> Optional[TrialOutcome]:
        """Centers in (k+2)-secant P^(k+1) compared against the (k+1)-secant splitting."""
        center = self.secant_hypothesis_center(rng, self.k + 2)
        if center is None:
            return None
        expected = expected_splitting(BundleKind.NORMAL, self.n, self.k, self.k + 1)
        return self.compare(center, normal_splitting(center), expected)

    def trial_tangent(self, rng: np.random.Generator, index: int) -> Optional[TrialOutcome]:
        center = self.secant_hypothesis_center(rng, self.k + 1)
        if center is None:
            return None
        expected = expected_splitting(BundleKind.TANGENT, self.n, self.k, self.k + 1)
        return self.compare(center, tangent_splitting(center), expected)

    def random_form(self, rng: np.random.Generator, index: int) -> BinaryForm:
        """Dense random form on even trials, a random sum of few powers on odd ones."""
        n = self.n
        if index % 2 == 0:
            coeffs = [int(v) for v in rng.integers(-self.height, self.height + 1, size=n + 1)]
            if not any(coeffs):
                coeffs[0] = 1
            return BinaryForm.from_coeffs(coeffs)
        terms = int(rng.integers(1, n // 2 + 2))
        return self.power_sum(rng, sample_params_from(rng, terms, self.height))

    def power_sum(self, rng: np.random.Generator, points) -> BinaryForm:
        f = BinaryForm.zero(self.n)
        for point in points:
            weight = int(rng.integers(1, self.height + 1)) * (1 if rng.integers(0, 2) else -1)
            f = f + veronese(*point, self.n).scale(weight)
        return f

    def trial_complete_intersection(self, rng: np.random.Generator, index: int) -> Optional[TrialOutcome]:
        n = self.n
        f = self.random_form(rng, index)
        if f.is_zero():
            return None
        ideal = apolar_ideal(f)
        s, alpha = ideal.s, ideal.alpha
        hilbert = ideal.hilbert[: n + 1]
        failures: List[str] = []
        if alpha.degree + ideal.beta.degree != n + 2:
            failures.append("generator degrees")
        if not ideal.generators_coprime():
            failures.append("resultant")
        if hilbert != tuple(reversed(hilbert)) or max(hilbert) != s:
            failures.append("hilbert")
        if 2 * s <= n + 1:
            if len(apolar_space(f, s)) != 1:
                failures.append("dim I_s")
            for v in range(s, n - s + 2):
                if not same_row_space(_matrix(apolar_space(f, v), v), _matrix(multiples(alpha, v), v)):
                    failures.append(f"I_{v}")
        return TrialOutcome(
            passed=not failures,
            payload=format_form(f),
            computed=f"s={s} degrees={alpha.degree},{ideal.beta.degree} hilbert={list(hilbert)}"
            + (f" failed={failures}" if failures else ""),
            expected="complete intersection with generator degrees summing to n+2",
        )

    def trial_sylvester(self, rng: np.random.Generator, index: int) -> Optional[TrialOutcome]:
        if self.n % 2 == 1:
            return self.trial_sylvester_odd(rng, index)
        return self.trial_sylvester_even(rng)

    def trial_sylvester_odd(self, rng: np.random.Generator, index: int) -> Optional[TrialOutcome]:
        """Odd degree 2t+1: length t+1 with a square-free generator, and exact reconstruction when it splits."""
        n = self.n
        t = (n - 1) // 2
        if index % 2 == 0:
            f = self.random_form(rng, 0)
        else:
            f = self.power_sum(rng, sample_params_from(rng, t + 1, self.height))
        if f.is_zero():
            return None
        ideal = apolar_ideal(f)
        failures: List[str] = []
        if length(f) != t + 1:
            failures.append("length")
        if not squarefree(ideal.alpha.symbol()):
            failures.append("squarefree")
        split = rational_roots(ideal.alpha.symbol())[1]
        if split and not failures:
            gad = canonical_form(f)
            if evaluate_gad(gad) != f or any(term.g != 1 for term in gad.terms):
                failures.append("reconstruction")
        return TrialOutcome(
            passed=not failures,
            payload=format_form(f),
            computed=f"length={length(f)} split={split}" + (f" failed={failures}" if failures else ""),
            expected=f"length={t + 1} square-free generator",
            observed={"split": split},
        )

    def trial_sylvester_even(self, rng: np.random.Generator) -> Optional[TrialOutcome]:
        """Even degree 2t: a form with decompositions on two disjoint sets of t+1 points."""
        n = self.n
        t = n // 2
        params = sample_params_from(rng, 2 * (t + 1), self.height)
        first, second = params[: t + 1], params[t + 1 :]
        columns = [veronese(*p, n) for p in first] + [veronese(*p, n).scale(-1) for p in second]
        system = QMatrix.from_rows([list(c.coeffs) for c in columns], cols=n + 1).transpose()
        weights = kernel_basis(system)[0]
        f = BinaryForm.zero(n)
        for weight, point in zip(weights[: t + 1], first):
            f = f + veronese(*point, n).scale(weight)
        decompositions = [additive_decomposition(f, points) for points in (first, second)]
        passed = all(
            gad is not None
            and evaluate_gad(gad) == f
            and all(term.coefficient != 0 for term in gad.terms)
            and gad.length == t + 1
            for gad in decompositions
        )
        return TrialOutcome(
            passed=passed and not f.is_zero(),
            payload=format_form(f),
            computed=f"decompositions on {first} and {second}",
            expected=f"two length-{t + 1} decompositions",
        )

    def run_trial(self, index: int) -> TrialOutcome:
        """Run trial index, resampling draws that miss the hypothesis or hit a degenerate map."""
        rng = np.random.default_rng(derive_seed(self.seed, index))
        trial = self.trial_functions[self.theorem]
        for attempt in range(Settings.max_resamples()):
            try:
                outcome = trial(rng, index)
            except DegenerateMap as e:
                self.logger.warning(f"Trial {index} attempt {attempt + 1} resampled: {e}")
                continue
            if outcome is not None:
                return outcome
            self.logger.warning(f"Trial {index} attempt {attempt + 1} resampled: hypothesis not met")
        raise ApolarityError(f"trial {index} did not realize the hypothesis in {Settings.max_resamples()} draws")

    def record(self, outcome: TrialOutcome) -> None:
        if outcome.passed:
            self.report.passes += 1
        else:
            self.report.counterexamples.append(
                {"center": outcome.payload, "computed": outcome.computed, "expected": outcome.expected}
            )

    def resolve(self, outcomes: List[TrialOutcome]) -> None:
        if self.theorem in (TheoremId.MAINRESULT, TheoremId.MAINRESULT_LITERAL):
            n, k = self.n, self.k
            tops = sorted({o.observed["top_degree"] for o in outcomes})
            printed, forced = n + 1 + 2 * k, n + 2 + 2 * k
            if tops == [forced]:
                matched = "n+2+2k"
            elif tops == [printed]:
                matched = "n+1+2k"
            else:
                matched = "neither"
            self.report.resolved_values = {
                "observed_top_degrees": tops,
                "top_degree_n+1+2k": printed,
                "top_degree_n+2+2k": forced,
                "matched": matched,
                "observed_splittings": sorted({o.computed for o in outcomes}),
            }
        elif self.theorem is TheoremId.SYLVESTER and self.n % 2 == 1:
            self.report.resolved_values = {"split_trials": sum(1 for o in outcomes if o.observed.get("split"))}
        elif self.theorem is TheoremId.POINT_SPECIAL:
            self.report.resolved_values = {"degenerate_trials": sum(1 for o in outcomes if o.computed == DEGENERATE)}

    def execute(self) -> None:
        self.logger.info(
            f"Verifying {self.theorem.value} for n = {self.n}, k = {self.k}: {self.trials} trials, seed {self.seed}"
        )
        outcomes: List[TrialOutcome] = []
        for index in range(self.trials):
            outcome = self.run_trial(index)
            outcomes.append(outcome)
            self.record(outcome)
            if not outcome.passed:
                self.logger.error(f"Counterexample at trial {index}: {outcome.computed} != {outcome.expected}")
            self.logger.debug(f"Trial {index}: {outcome.computed}")
        self.resolve(outcomes)
        self.logger.info(f"{self.report.passes} of {self.trials} trials passed")


def run_verification(
    theorem_id: str,
    n: int,
    k: int,
    trials: int,
    seed: int,
    height: Optional[int] = None,
    output_dir: Optional[str] = None,
    omit_timing: bool = False,
    log_level: Optional[int] = None,
) -> VerificationReport:
    """Run a verification campaign, save its report and return it."""
    campaign = VerificationCampaign(theorem_id, n, k, trials, seed, height, output_dir, omit_timing, log_level)
    campaign.run()
    campaign.report.wall_time_ms = campaign.wall_time_ms
    return campaign.report


# (theorem, n, k, trials) at acceptance scale; mainresult-literal has known counterexamples and is not listed
ACCEPTANCE_GRID: Tuple[Tuple[str, int, int, int], ...] = (
    *(("point", n, 1, 20) for n in range(5, 11)),
    *(("point-special", n, 1, 10) for n in range(5, 11)),
    *(("rank3", n, 2, 25) for n in range(7, 11)),
    *(("rank4", n, 2, 25) for n in range(8, 11)),
    ("rank5", 9, 2, 25),
    ("rank5", 10, 2, 25),
    ("codim3-rank4", 8, 3, 25),
    ("codim3-rank4", 9, 3, 25),
    ("mainresult", 9, 3, 25),
    ("mainresult", 10, 3, 25),
    ("mainresult", 12, 4, 25),
    ("mainresultTG", 7, 2, 25),
    ("mainresultTG", 8, 3, 25),
    ("mainresultTG", 10, 4, 25),
    *(("ci", n, 1, 20) for n in range(3, 13)),
    *(("sylvester", n, 1, 20) for n in (5, 7, 9)),
    ("sylvester", 4, 1, 5),
    ("sylvester", 6, 1, 5),
)


def main():
    """Entry point used by ``make verify-all``: the whole acceptance grid, seed 1."""
    logger = logging.getLogger("verification_campaign")
    failing: List[str] = []
    try:
        for theorem_id, n, k, trials in ACCEPTANCE_GRID:
            report = run_verification(theorem_id, n, k, trials=trials, seed=1)
            if report.counterexamples:
                failing.append(f"{theorem_id} (n = {n}, k = {k})")
    except Exception as e:
        logger.error(f"Failed to complete verification: {e}")
        raise
    if failing:
        logger.error(f"Counterexamples in {len(failing)} campaigns: {', '.join(failing)}")
        sys.exit(2)
    logger.info(f"All {len(ACCEPTANCE_GRID)} campaigns passed")


if __name__ == "__main__":
    main()
