"""Orders, distributions, extremal families and conditional quantities."""

from .conditional import CondSource, bhattacharyya, cond_renyi, expected_norm, min_error
from .extremal import (
    ExtremalV,
    ExtremalW,
    inv_entropy_v,
    inv_entropy_w,
    inv_norm_v,
    inv_norm_w,
    norm_v,
    norm_w,
    renyi_v,
    renyi_w,
)
from .orders import HALF, INFINITY, SHANNON, TWO, ZERO, Order, gamma, q_log, theta
from .simplex import ProbVec, binary_entropy, lr_norm, renyi_entropy

__all__ = [
    "CondSource",
    "ExtremalV",
    "ExtremalW",
    "HALF",
    "INFINITY",
    "Order",
    "ProbVec",
    "SHANNON",
    "TWO",
    "ZERO",
    "bhattacharyya",
    "binary_entropy",
    "cond_renyi",
    "expected_norm",
    "gamma",
    "inv_entropy_v",
    "inv_entropy_w",
    "inv_norm_v",
    "inv_norm_w",
    "lr_norm",
    "min_error",
    "norm_v",
    "norm_w",
    "q_log",
    "renyi_entropy",
    "renyi_v",
    "renyi_w",
    "theta",
]
