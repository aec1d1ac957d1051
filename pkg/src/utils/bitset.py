"""
Fixed-width membership masks over element indices.

Bit i of a mask is set when element i is a member. Python ints carry the
mask; numpy boolean arrays are the working form for vectorised checks.
"""

from typing import Iterable, List

import numpy as np


def mask_from_indices(indices: Iterable[int]) -> int:
    mask = 0
    for index in indices:
        mask |= 1 << int(index)
    return mask


def mask_from_flags(flags: np.ndarray) -> int:
    """Pack a boolean array (flags[i] <=> i is a member) into a mask."""
    packed = np.packbits(np.asarray(flags, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def flags_from_mask(mask: int, size: int) -> np.ndarray:
    """Unpack a mask into a boolean array of length `size`."""
    nbytes = (size + 7) // 8
    raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:size].astype(bool)


def indices_from_mask(mask: int) -> List[int]:
    """Members in ascending index order."""
    return [i for i, bit in enumerate(reversed(bin(mask)[2:])) if bit == "1"]


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def is_subset(inner: int, outer: int) -> bool:
    return inner & ~outer == 0
