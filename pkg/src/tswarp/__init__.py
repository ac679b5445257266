"""Elastic (DTW) and transport (d_T) dissimilarities for 1-NN time-series classification."""

from .classifier import Dissimilarity, EvalReport, accuracy_correlation, evaluate, low_sample_sweep, nn_classify
from .elastic import brute_force_dtw, dtw, dtw_cost, dtw_weighted
from .io import load_tsv, save_tsv
from .signal import Signal, ZeroVariation, derivative, derivative_density, resample
from .synthgen import LabeledDataset, SyntheticSpec, generate_dataset, random_warp, template_catalog
from .transport import d_t, generalized_inverse, transport_map, wasserstein2

__version__ = "0.1.0"
