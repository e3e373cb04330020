import numpy as np

from lvx.exceptions import DimensionError, InvalidInputError
from .matrix import check_matrix, check_vector, check_binary_labels, sigmoid


def loss_mse(pred, target):
    """
    Mean squared error over all elements.

    Returns:
        (loss, grad) with grad = 2 (pred - target) / N
    """
    pred = check_matrix(pred, "pred")
    target = check_matrix(target, "target")
    if pred.shape != target.shape:
        raise DimensionError(f"pred shape {pred.shape} != target shape {target.shape}")
    count = pred.size
    if count == 0:
        return 0.0, np.zeros_like(pred)
    diff = pred - target
    loss = float(np.mean(diff * diff))
    return loss, 2.0 * diff / count


def loss_bce(log_prob_pos, labels, logits):
    """
    Binary cross entropy for a log-sigmoid head.

    The loss is evaluated from the pre-sigmoid logits as
    mean(softplus(z) - y * z), which is exact for saturated probabilities.

    Args:
        log_prob_pos: log p for each row (log-sigmoid outputs, <= 0)
        labels: 0/1 label per row
        logits: pre-sigmoid logit per row, carried alongside log_prob_pos

    Returns:
        (loss, grad) where grad is w.r.t. the logits: (sigmoid(z) - y) / N
    """
    log_prob_pos = check_vector(log_prob_pos, "log_prob_pos")
    logits = check_vector(logits, "logits", length=log_prob_pos.shape[0])
    labels = check_binary_labels(labels)
    if labels.shape != log_prob_pos.shape:
        raise DimensionError(f"labels length {labels.shape[0]} != predictions {log_prob_pos.shape[0]}")
    if np.any(log_prob_pos > 0.0):
        raise InvalidInputError("log_prob_pos must be <= 0")

    count = logits.shape[0]
    if count == 0:
        return 0.0, np.zeros_like(logits)
    loss = float(np.mean(np.logaddexp(0.0, logits) - labels * logits))
    grad = (sigmoid(logits) - labels) / count
    return loss, grad
