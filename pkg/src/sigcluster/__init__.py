"""sigcluster: signature-based unimodality testing and cluster-count
estimation, with the classic baselines and a reproduction harness.

The signature test (Sigtest) decides whether a 1-d sample is unimodal by
comparing the CDF-mapped sorted absolute values of the normalized sample
against a probabilistic order-statistic band; hierarchical wrappers use
it (or Anderson-Darling / the dip test) as a cluster-splitting criterion
to estimate the number of clusters.
"""

from .baselines import (
    AD_CRITICAL_VALUES,
    BaselineDecision,
    BaselineMethod,
    anderson_darling,
    anderson_darling_statistic,
    dip_reference_dips,
    dip_reference_table,
    dip_statistic,
    dip_test,
    ks_lilliefors,
    ks_statistic,
    lilliefors_reference,
    lilliefors_table,
)
from .benchmark import (
    BenchmarkRecord,
    format_cluster_table,
    format_test_table,
    run_cluster_benchmark,
    run_test_benchmark,
    time_method,
)
from .clustering import (
    ADCriterion,
    ClusteringResult,
    DipViewerCriterion,
    SigtestCriterion,
    SplitRecord,
    dipmeans_family,
    gmeans_family,
    kmeans,
    project_split,
    run_method,
)
from .core import (
    OrderStatMoments,
    half_normal_cdf,
    normalize,
    order_statistic_moments,
    sorted_abs,
)
from .data_io import (
    DatasetManifest,
    bundled_manifest,
    load_csv,
    read_results,
    write_results,
)
from .dataset import Dataset
from .metrics import ari, vi
from .sigtest import (
    Signature,
    SignatureBounds,
    SignatureVariant,
    SigtestConfig,
    TestOutcome,
    compute_bounds,
    compute_signature,
    count_violations,
    signature_moments,
    sigtest,
)
from .synthetic import TwoClusterSpec, gen_gaussian, gen_two_clusters

__version__ = "0.1.0"

__all__ = [
    "AD_CRITICAL_VALUES", "ADCriterion", "BaselineDecision", "BaselineMethod",
    "BenchmarkRecord", "ClusteringResult", "Dataset", "DatasetManifest",
    "DipViewerCriterion", "OrderStatMoments", "Signature", "SignatureBounds",
    "SignatureVariant", "SigtestConfig", "SigtestCriterion", "SplitRecord",
    "TestOutcome", "TwoClusterSpec", "anderson_darling",
    "anderson_darling_statistic", "ari", "bundled_manifest", "compute_bounds",
    "compute_signature", "count_violations", "dip_reference_dips",
    "dip_reference_table", "dip_statistic", "dip_test", "dipmeans_family",
    "format_cluster_table", "format_test_table", "gen_gaussian",
    "gen_two_clusters", "gmeans_family", "half_normal_cdf", "kmeans",
    "ks_lilliefors", "ks_statistic", "lilliefors_reference",
    "lilliefors_table", "load_csv", "normalize", "order_statistic_moments",
    "project_split", "read_results", "run_cluster_benchmark", "run_method",
    "run_test_benchmark", "signature_moments", "sigtest", "sorted_abs",
    "time_method", "vi", "write_results",
]
