"""Forward sensing model Y_s = H_s X + Z_s."""

import numpy as np

from randsense.errors import InvalidParameterError
from randsense.models.system import SensingScene


def forward_model(scene: SensingScene, x: np.ndarray) -> np.ndarray:
    """
    Echo received over one frame.

    Args:
        scene: Channel and noise realization
        x: Sensing signal X = W S, shape (n_tx, frame_len)

    Returns:
        Y_s of shape (n_rx, frame_len)

    Raises:
        InvalidParameterError: If X does not match the scene dimensions
    """
    x = np.asarray(x)
    if x.shape != (scene.n_tx, scene.frame_len):
        raise InvalidParameterError(
            f"signal must have shape {(scene.n_tx, scene.frame_len)}, got {x.shape}", parameter="x"
        )
    return scene.channel @ x + scene.noise
