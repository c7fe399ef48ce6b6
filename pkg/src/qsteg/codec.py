"""Enumerative coding between arbitrary bit strings and constant-weight strings.

A thermal channel at mean photon number n_bar shows the vacuum in a fraction
1/(n_bar + 1) of its modes. To look thermal, an N-mode Fock transmission must
therefore carry about N/(n_bar + 1) vacuum symbols ('0') and the rest excited
symbols ('1'). Messages are mapped to such strings by rank: rank w (1-based)
is the w-th smallest N-bit string, by numeric value, with the required
number of ones.

Codewords and keys are ASCII strings of '0' and '1', most significant bit
first. All counting is done with exact integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rates import binary_entropy


@dataclass(frozen=True)
class ConstantWeightCode:
    length: int
    zeros: int

    def __post_init__(self):
        if not 0 <= self.zeros <= self.length:
            raise ValueError(f"need 0 <= zeros <= length, got {self.zeros}, {self.length}")

    @property
    def weight(self) -> int:
        return self.length - self.zeros

    @property
    def size(self) -> int:
        return math.comb(self.length, self.zeros)


@dataclass(frozen=True)
class MessageWord:
    value: int
    bit_length: int

    def __post_init__(self):
        if self.value < 0 or self.bit_length < 0:
            raise ValueError("value and bit_length must be nonnegative")
        if self.value >= 1 << self.bit_length:
            raise ValueError(f"{self.value} does not fit in {self.bit_length} bits")

    @classmethod
    def parse(cls, text: str, bit_length: int | None = None) -> "MessageWord":
        """Read a decimal literal, or a binary one written as ``0b...``.

        A binary literal fixes the bit length to its digit count (leading
        zeros included) unless ``bit_length`` is given.
        """
        t = text.strip().replace("_", "")
        if t.lower().startswith("0b"):
            digits = t[2:]
            if not digits or set(digits) - {"0", "1"}:
                raise ValueError(f"bad binary literal {text!r}")
            value = int(digits, 2)
            return cls(value, bit_length if bit_length is not None else len(digits))
        if not t.isdigit():
            raise ValueError(f"bad decimal literal {text!r}")
        value = int(t)
        return cls(value, bit_length if bit_length is not None else max(1, value.bit_length()))

    def bits(self) -> str:
        return format(self.value, f"0{self.bit_length}b") if self.bit_length else ""


def capacity_per_symbol(n_bar: float) -> float:
    """Bits per mode carried by a thermal-looking constant-weight Fock code."""
    if n_bar < 0:
        raise ValueError(f"n_bar must be >= 0, got {n_bar}")
    return binary_entropy(1.0 / (n_bar + 1.0))


def zeros_for(length: int, n_bar: float) -> int:
    """round(length / (n_bar + 1)), exact halves rounded down."""
    return math.ceil(length / (n_bar + 1.0) - 0.5)


def code_for_count(n_bar: float, count: int) -> ConstantWeightCode:
    """Shortest thermal-ratio code with at least ``count`` codewords."""
    if n_bar < 0:
        raise ValueError(f"n_bar must be >= 0, got {n_bar}")
    if count <= 1:
        return ConstantWeightCode(0, 0)
    if n_bar == 0:
        raise ValueError("a vacuum channel (n_bar = 0) admits a single codeword")
    length = 1
    while True:
        code = ConstantWeightCode(length, zeros_for(length, n_bar))
        if code.size >= count:
            return code
        length += 1


def code_for(n_bar: float, message_bits: int) -> ConstantWeightCode:
    """Shortest thermal-ratio code that can carry every ``message_bits``-bit message."""
    if message_bits < 1:
        raise ValueError("message_bits must be >= 1")
    return code_for_count(n_bar, 1 << message_bits)


def _check_string(s: str, code: ConstantWeightCode):
    if len(s) != code.length or set(s) - {"0", "1"}:
        raise ValueError(f"expected a {code.length}-character 0/1 string, got {s!r}")
    if s.count("1") != code.weight:
        raise ValueError(f"{s!r} has weight {s.count('1')}, code needs {code.weight}")


def unrank(rank: int, code: ConstantWeightCode) -> str:
    """The ``rank``-th smallest string (1-based) of the code.

    Walks from the most significant bit. With L positions left and k ones
    still to place, comb(L - 1, k) strings put a 0 here and all of them are
    smaller than any string putting a 1 here. The blocks skipped along a run
    of 1s telescope by the hockey-stick identity, so one binomial per
    position suffices.
    """
    if not 1 <= rank <= code.size:
        raise ValueError(f"rank {rank} outside [1, {code.size}]")
    k = code.weight
    out = []
    for pos in range(code.length):
        remaining = code.length - pos
        if k == 0:
            out.append("0" * remaining)
            break
        if k == remaining:
            out.append("1" * remaining)
            break
        below = math.comb(remaining - 1, k)
        if rank <= below:
            out.append("0")
        else:
            out.append("1")
            rank -= below
            k -= 1
    return "".join(out)


def rank(s: str, code: ConstantWeightCode) -> int:
    _check_string(s, code)
    k = code.weight
    r = 1
    for pos, ch in enumerate(s):
        if ch == "1":
            r += math.comb(code.length - pos - 1, k)
            k -= 1
    return r


def encode_message(msg: MessageWord, code: ConstantWeightCode) -> str:
    """Codeword for ``msg``; value v goes to rank v + 1."""
    if msg.value + 1 > code.size:
        raise ValueError(f"message value {msg.value} needs {msg.value + 1} codewords, code has {code.size}")
    return unrank(msg.value + 1, code)


def decode_message(s: str, code: ConstantWeightCode, bit_length: int) -> MessageWord:
    return MessageWord(rank(s, code) - 1, bit_length)


def scramble(s: str, key: str) -> str:
    """Bitwise XOR of two equal-length 0/1 strings."""
    if len(s) != len(key):
        raise ValueError(f"length mismatch: {len(s)} vs {len(key)}")
    return "".join("1" if a != b else "0" for a, b in zip(s, key))


def hockey_stick_holds(n: int, k: int) -> bool:
    """sum_{i<k} comb(n + i, i) == comb(k + n, k - 1), in exact integers."""
    return sum(math.comb(n + i, i) for i in range(k)) == math.comb(k + n, k - 1)


def fock_symbol_plan(codeword: str, n_bar: float, rng: np.random.Generator) -> list[int]:
    """Photon numbers to transmit: vacuum for '0', a thermal draw from n >= 1 for '1'.

    Given n >= 1 the thermal law is geometric with success probability
    1/(n_bar + 1), so every mode's marginal stays exactly thermal.
    """
    if set(codeword) - {"0", "1"}:
        raise ValueError(f"not a 0/1 string: {codeword!r}")
    ones = codeword.count("1")
    if ones and n_bar <= 0:
        raise ValueError("excited symbols need n_bar > 0")
    draws = iter(rng.geometric(1.0 / (n_bar + 1.0), ones).tolist() if ones else [])
    return [next(draws) if ch == "1" else 0 for ch in codeword]
