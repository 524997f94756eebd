# -*- coding: utf-8 -*-
"""Sobol sensitivity index estimators for a Saltelli design.

First order indices use the correlation form
``mean(f_B * (f_AB_i - f_A)) / V``, total order indices the squared
difference form ``mean((f_A - f_AB_i)^2) / (2V)``. Second order indices come
from the closed index of each pair, estimated from ``BA_i`` and ``AB_j``,
minus both first order indices. Estimates are not clamped, so small or
negative values are reported as computed.
"""

import dataclasses
from typing import Any, Literal, Sequence

import numpy as np

from hemssa.sensitivity import saerror, saltelli

# Relative variance below which the output counts as constant.
_RELATIVE_VARIANCE_FLOOR = 1e-12


@dataclasses.dataclass(frozen=True)
class SensitivityResult:
    """Indices for ``d`` labelled inputs.

    :field labels: Input names.
    :field first_order: ``S_i``, shape ``(d,)``.
    :field total_order: ``S_i^T``, shape ``(d,)``.
    :field second_order: Pure pair indices ``S_ij``, shape ``(d, d)``,
    symmetric with a zero diagonal.
    :field output_variance: Estimated variance of the model output.
    :field output_mean: Mean of the model output over ``A`` and ``B``.
    """

    labels: tuple[str, ...]
    first_order: np.ndarray
    total_order: np.ndarray
    second_order: np.ndarray
    output_variance: float
    output_mean: float

    @property
    def d(self) -> int:
        """Number of inputs."""
        return len(self.labels)

    def ranked(self, order: Literal["first", "total"] = "total") -> list[tuple[str, float]]:
        """Labels with their index, largest first. Ties keep input order."""
        values = self.first_order if order == "first" else self.total_order
        pairs = [(label, float(v)) for label, v in zip(self.labels, values)]
        return sorted(pairs, key=lambda p: -p[1])

    def to_json_dict(self) -> dict[str, Any]:
        """Returns the result as JSON-compatible data."""
        return {
            "labels": list(self.labels),
            "first_order": self.first_order.tolist(),
            "total_order": self.total_order.tolist(),
            "second_order": self.second_order.tolist(),
            "output_variance": self.output_variance,
            "output_mean": self.output_mean,
        }


def default_labels(d: int) -> tuple[str, ...]:
    """Labels ``X1..Xd``."""
    return tuple(f"X{i + 1}" for i in range(d))


def estimate_indices(
    f_a: np.ndarray,
    f_b: np.ndarray,
    f_ab: np.ndarray,
    f_ba: np.ndarray,
    labels: Sequence[str] | None = None,
) -> SensitivityResult:
    """Estimates first, second and total order indices.

    :param f_a: Outputs on block ``A``, shape ``(n,)``.
    :param f_b: Outputs on block ``B``, shape ``(n,)``.
    :param f_ab: Outputs on blocks ``AB_i``, shape ``(d, n)``.
    :param f_ba: Outputs on blocks ``BA_i``, shape ``(d, n)``.
    :param labels: Input names, defaults to ``X1..Xd``.
    :raises saerror.DesignError: Mismatched block shapes or ``n < 2``.
    :raises saerror.VarianceZero: The outputs are constant.
    :return: Estimated indices.
    """
    f_a = np.asarray(f_a, dtype=np.float64)
    f_b = np.asarray(f_b, dtype=np.float64)
    f_ab = np.asarray(f_ab, dtype=np.float64)
    f_ba = np.asarray(f_ba, dtype=np.float64)

    if f_a.ndim != 1:
        raise saerror.DesignError(f"f_a must be one-dimensional, got shape {f_a.shape}")
    n = f_a.shape[0]
    d = f_ab.shape[0] if f_ab.ndim == 2 else -1
    if n < 2:
        raise saerror.DesignError(f"need at least 2 samples per block, got {n}")
    if f_b.shape != (n,) or f_ab.shape != (d, n) or f_ba.shape != (d, n) or d < 1:
        raise saerror.DesignError(
            f"inconsistent block shapes: f_a {f_a.shape}, f_b {f_b.shape}, "
            f"f_ab {f_ab.shape}, f_ba {f_ba.shape}"
        )
    if labels is None:
        labels = default_labels(d)
    if len(labels) != d:
        raise saerror.DesignError(f"got {len(labels)} labels for {d} inputs")

    pooled = np.concatenate([f_a, f_b])
    mean = float(pooled.mean())
    variance = float(pooled.var(ddof=1))
    if variance == 0 or variance <= _RELATIVE_VARIANCE_FLOOR * mean * mean:
        raise saerror.VarianceZero(f"output variance {variance:g} is zero for mean {mean:g}")

    first = np.mean(f_b * (f_ab - f_a), axis=1) / variance
    total = np.mean((f_a - f_ab) ** 2, axis=1) / (2.0 * variance)

    mean_product = float(f_a.mean()) * float(f_b.mean())
    second = np.zeros((d, d))
    for i in range(d):
        for j in range(i + 1, d):
            closed = (float(np.mean(f_ba[i] * f_ab[j])) - mean_product) / variance
            second[i, j] = second[j, i] = closed - first[i] - first[j]

    return SensitivityResult(
        labels=tuple(labels),
        first_order=first,
        total_order=total,
        second_order=second,
        output_variance=variance,
        output_mean=mean,
    )


def analyze(
    design: saltelli.SaltelliDesign,
    outputs: np.ndarray,
    labels: Sequence[str] | None = None,
) -> SensitivityResult:
    """Estimates indices from outputs given in design-row order."""
    blocks = design.split_outputs(outputs)
    return estimate_indices(blocks.f_a, blocks.f_b, blocks.f_ab, blocks.f_ba, labels)
