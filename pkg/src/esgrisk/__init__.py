"""Scenario-based (return, ESG) risk measures, reward-risk ratios,
safe-asset hedging, dual-representation oracles, and randomized property
checking."""

from .axiom_lab import (
    AxiomReport,
    PropertyMatrix,
    check_axiom,
    reproduce_property_matrix,
)
from .dual_oracle import (
    DualCertificate,
    check_envelope,
    esg_avar_dual,
    esg_avar_l_dual,
)
from .errors import (
    DataError,
    EsgRiskError,
    InfeasibleHedgeError,
    InsufficientDataError,
    NotFoundError,
    PanelParseError,
    ParameterError,
)
from .hedging import (
    HedgeResult,
    SafeAsset,
    SafeAssetChoice,
    charity_threshold,
    esg_hedge_weight,
    safe_asset_risk,
    select_safe_asset,
    univariate_hedge_weight,
)
from .measures import (
    AVAR_KINDS,
    MEASURE_KINDS,
    MeasureSpec,
    combine,
    esg_avar,
    esg_avar_l,
    esg_mean,
    esg_sigma,
    esg_sigma_l,
    esg_variance,
    esg_variance_l,
    evaluate_measure,
    pure_risks,
    zero_esg,
    zero_returns,
)
from .ratios import (
    RATIO_KINDS,
    RatioSpec,
    RatioValue,
    esg_farinelli_tibiletti,
    esg_omega,
    esg_rachev,
    esg_sharpe,
    esg_sortino_satchell,
    esg_starr,
    evaluate_ratio,
)
from .risk_core import DiscreteDistribution, avar, mean, partial_norm, std, variance
from .scenario_model import (
    AssetPanel,
    AssetStats,
    BivariateScenarioSet,
    DescriptiveStats,
    NormalizationConfig,
    correlation_matrix,
    descriptive_stats,
    load_panel,
    normalize_esg,
    to_scenarios,
)

__version__ = "0.1.0"
