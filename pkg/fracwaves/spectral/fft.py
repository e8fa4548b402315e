"""Iterative radix-2 decimation-in-time FFT with cached bit-reversal and twiddle tables."""
from functools import lru_cache

import numpy as np

from fracwaves.utils import SizeError


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


@lru_cache(maxsize=None)
def _bit_reversal(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    index = np.arange(n)
    reversed_index = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        reversed_index |= ((index >> b) & 1) << (bits - 1 - b)
    reversed_index.flags.writeable = False
    return reversed_index


@lru_cache(maxsize=None)
def _twiddles(n: int) -> np.ndarray:
    table = np.exp(-2j * np.pi * np.arange(n // 2) / n)
    table.flags.writeable = False
    return table


def _check_length(data: np.ndarray) -> int:
    if data.ndim != 1:
        raise SizeError(f"expected a one-dimensional sequence, got shape {data.shape}")
    n = data.shape[0]
    if not is_power_of_two(n):
        raise SizeError(f"FFT length must be a power of two, got {n}")
    return n


def fft_forward(samples: np.ndarray) -> np.ndarray:
    """
    Unnormalised forward DFT, X_j = sum_n x_n exp(-2 pi i j n / N).

    Args:
        samples (np.ndarray): Complex or real samples; the length must be 2^p.

    Returns:
        np.ndarray: The N complex Fourier amplitudes in natural (FFT) order.

    Raises:
        SizeError: If the length is not a power of two.

    Examples:
        >>> fft_forward(np.array([1, 0, 0, 0]))
        array([1.+0.j, 1.+0.j, 1.+0.j, 1.+0.j])
    """
    data = np.asarray(samples, dtype=complex)
    n = _check_length(data)
    x = data[_bit_reversal(n)]
    twiddles = _twiddles(n)

    size = 2
    while size <= n:
        half = size // 2
        w = twiddles[:: n // size][:half]
        blocks = x.reshape(-1, size)
        even = blocks[:, :half]
        odd = blocks[:, half:] * w
        x = np.concatenate((even + odd, even - odd), axis=1).ravel()
        size *= 2
    return x


def fft_inverse(modes: np.ndarray) -> np.ndarray:
    """Inverse of `fft_forward`, including the 1/N factor."""
    data = np.asarray(modes, dtype=complex)
    n = _check_length(data)
    return np.conj(fft_forward(np.conj(data))) / n
