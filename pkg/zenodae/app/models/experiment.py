from enum import Enum
from pydantic import BaseModel, ConfigDict, Field
from typing import Any, Dict, List, Optional, Tuple, Union


class Suite(str, Enum):
    DILATE = "dilate"
    ZENO = "zeno"
    STOKES = "stokes"
    GAUSS = "gauss"
    RLC = "rlc"
    COST = "cost"


class ValueKind(str, Enum):
    INT = "int"
    FLOAT = "float"
    INT_LIST = "int_list"
    FLOAT_LIST = "float_list"


ParameterValue = Union[int, float, List[int], List[float]]

# key -> (kind, default) per suite
SUITE_PARAMETERS: Dict[Suite, Dict[str, Tuple[ValueKind, ParameterValue]]] = {
    Suite.DILATE: {
        "n": (ValueKind.INT, 4),
        "m": (ValueKind.INT, 2),
        "M": (ValueKind.INT, 24),
        "jstar": (ValueKind.INT, 12),
        "times": (ValueKind.FLOAT_LIST, [0.0, 0.05, 0.1, 0.2]),
        "refresh_steps": (ValueKind.INT, 1),
        "tol": (ValueKind.FLOAT, 1e-6),
    },
    Suite.ZENO: {
        "n": (ValueKind.INT, 4),
        "m": (ValueKind.INT, 2),
        "M": (ValueKind.INT, 12),
        "t": (ValueKind.FLOAT, 0.2),
        "N": (ValueKind.INT_LIST, [4, 8, 16, 32, 64, 128, 256]),
    },
    Suite.STOKES: {
        "n": (ValueKind.INT_LIST, [4, 8]),
        "t": (ValueKind.FLOAT, 1e-3),
        "M": (ValueKind.INT, 65),
        "tol": (ValueKind.FLOAT, 1e-6),
    },
    Suite.GAUSS: {
        "n": (ValueKind.INT, 4),
        "t": (ValueKind.FLOAT, 0.01),
        "Mq": (ValueKind.INT_LIST, [1, 2, 4, 8, 12, 16]),
        "Q": (ValueKind.INT, 256),
        "qmax": (ValueKind.FLOAT, 12.0),
        "tol": (ValueKind.FLOAT, 1e-6),
    },
    Suite.RLC: {
        "N": (ValueKind.INT_LIST, [2, 4, 8]),
        "M": (ValueKind.INT, 24),
        "jstar": (ValueKind.INT, 12),
        "t": (ValueKind.FLOAT, 0.5),
        "tol": (ValueKind.FLOAT, 1e-6),
    },
    Suite.COST: {
        "h": (ValueKind.FLOAT_LIST, [1 / 8, 1 / 16, 1 / 32, 1 / 64]),
        "t": (ValueKind.FLOAT_LIST, [1.0]),
        "eps": (ValueKind.FLOAT, 1e-3),
        "d": (ValueKind.INT, 2),
        "chi": (ValueKind.FLOAT, 1.0),
    },
}

SUITE_COLUMNS: Dict[Suite, List[str]] = {
    Suite.DILATE: ["t", "err", "exact_order", "amplification"],
    Suite.ZENO: ["N", "err", "ratio"],
    Suite.STOKES: ["n", "t", "err", "div_residual", "sigma_min"],
    Suite.GAUSS: ["Mq", "err", "kmax", "sum_c"],
    Suite.RLC: ["N", "t", "err", "constraint_residual", "sigma_min", "sigma_max", "norm_L"],
    Suite.COST: [
        "h", "t", "eps", "d", "chi", "p_degree", "direct_queries", "direct_gates",
        "gz_gates", "gz_prep", "classical", "verdict",
    ],
}

# keys every config may carry besides the suite parameters
RESERVED_KEYS = ("suite", "seed", "output")


class ExperimentConfig(BaseModel):
    suite: Suite
    parameters: Dict[str, Any] = Field(default_factory=dict)
    seed: int = 42
    output_path: Optional[str] = None

    model_config = ConfigDict(frozen=True)

    def resolved(self) -> Dict[str, Any]:
        """Suite defaults overlaid with the configured values"""
        values = {key: default for key, (_, default) in SUITE_PARAMETERS[self.suite].items()}
        values.update(self.parameters)
        return values

    @property
    def filename(self) -> str:
        return self.output_path or f"{self.suite.value}.csv"
