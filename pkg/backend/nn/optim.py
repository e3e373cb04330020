from dataclasses import dataclass, field
from typing import List

import numpy as np

from lvx.exceptions import DimensionError, InvalidInputError
from .matrix import check_finite


@dataclass
class AdamState:
    lr: float = 0.001
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    t: int = 0
    m: List[np.ndarray] = field(default_factory=list)
    v: List[np.ndarray] = field(default_factory=list)

    def __post_init__(self):
        if self.lr <= 0:
            raise InvalidInputError(f"lr must be > 0, got {self.lr}")
        if not (0.0 <= self.beta1 < 1.0 and 0.0 <= self.beta2 < 1.0):
            raise InvalidInputError(f"betas must be in [0, 1), got {self.beta1}, {self.beta2}")
        if self.epsilon <= 0:
            raise InvalidInputError(f"epsilon must be > 0, got {self.epsilon}")
        if self.t < 0:
            raise InvalidInputError(f"step counter must be >= 0, got {self.t}")

    @classmethod
    def for_params(cls, params, lr=0.001, beta1=0.9, beta2=0.999, epsilon=1e-8):
        return cls(
            lr=lr,
            beta1=beta1,
            beta2=beta2,
            epsilon=epsilon,
            m=[np.zeros_like(p) for p in params],
            v=[np.zeros_like(p) for p in params],
        )


def adam_step(params, grads, state):
    """
    One bias-corrected Adam update, applied in place to `params`.

    Returns:
        (params, state)
    """
    if not (len(params) == len(grads) == len(state.m) == len(state.v)):
        raise DimensionError(
            f"parameter/gradient/state counts differ: {len(params)}, {len(grads)}, {len(state.m)}"
        )
    for index, (param, grad) in enumerate(zip(params, grads)):
        if param.shape != grad.shape or param.shape != state.m[index].shape:
            raise DimensionError(
                f"parameter {index}: shape {param.shape}, gradient {grad.shape}, state {state.m[index].shape}"
            )
        check_finite(grad, f"gradient {index}")

    state.t += 1
    correction1 = 1.0 - state.beta1 ** state.t
    correction2 = 1.0 - state.beta2 ** state.t
    for param, grad, m, v in zip(params, grads, state.m, state.v):
        m *= state.beta1
        m += (1.0 - state.beta1) * grad
        v *= state.beta2
        v += (1.0 - state.beta2) * grad * grad
        m_hat = m / correction1
        v_hat = v / correction2
        param -= state.lr * m_hat / (np.sqrt(v_hat) + state.epsilon)
    return params, state
