import pathlib

import numpy as np
import pytest

import sqzfilter
from sqzfilter import LineshapeParams, TransmissionTrace, eval_lineshape


@pytest.fixture(scope="session")
def data_dir() -> pathlib.Path:
    """Bundled example configs and traces shipped inside the package."""
    return pathlib.Path(sqzfilter.__file__).parent / "data"


@pytest.fixture(scope="session")
def golden_dir() -> pathlib.Path:
    return pathlib.Path(__file__).parent / "golden"


def synthetic_trace(params: LineshapeParams, span: float = 5.0e6,
                    n: int = 201, noise_sigma: float = 0.0,
                    seed: int = 0) -> TransmissionTrace:
    """Noiseless or noisy trace sampled from the window model."""
    det = np.linspace(-span, span, n)
    tra = np.asarray(eval_lineshape(params, det))
    if noise_sigma:
        rng = np.random.default_rng(seed)
        tra = tra + noise_sigma * rng.standard_normal(n)
        tra = np.clip(tra, 0.0, 1.0)
    return TransmissionTrace(detuning=tuple(det), transmission=tuple(tra))
