"""Radix-2 binary encodings of real unknowns and the qubit registry.

Two encoding schemes are supported, both parameterized by a contiguous
exponent interval [l_min, l_max] with B = l_max - l_min + 1 bits per group:

- ``two_sided``: x = sum_l 2^l q+_l  -  sum_l 2^l q-_l
  (2B bits per unknown; a value can have several bit representations)

- ``offset``:    x = -2^(l_max+1) q-  +  sum_l 2^l q+_l
  (B+1 bits per unknown; every representable value has a unique
  representation)

Decoded values are divided by the integer scaling factor ``scale_c``,
which supports solving ||A(cx) - cb|| in integer bits and recovering x.

Flat qubit layout: for each unknown i its group bits are contiguous
(positive bits by ascending exponent, then the negative bits / the
translation bit); eigenvalue bits follow all x bits with the same
intra-group layout; auxiliary reduction variables come last.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Literal, Optional

from .errors import ConfigurationError, DimensionError

Scheme = Literal["two_sided", "offset"]
LambdaSign = Literal["positive", "negative", "both"]

SCHEMES = ("two_sided", "offset")
LAMBDA_SIGNS = ("positive", "negative", "both")


@dataclass(frozen=True)
class EncodingConfig:
    """Exponent range, scheme, and scaling for one group of unknowns."""

    l_min: int
    l_max: int
    scheme: Scheme = "two_sided"
    scale_c: int = 1

    def __post_init__(self) -> None:
        if self.l_min > self.l_max:
            raise ConfigurationError(
                f"l_min ({self.l_min}) must not exceed l_max ({self.l_max})"
            )
        if self.scheme not in SCHEMES:
            raise ConfigurationError(f"unknown scheme {self.scheme!r}")
        if not isinstance(self.scale_c, int) or self.scale_c < 1:
            raise ConfigurationError(
                f"scale_c must be a positive integer, got {self.scale_c!r}"
            )

    @property
    def bits_per_group(self) -> int:
        return self.l_max - self.l_min + 1

    @property
    def group_size(self) -> int:
        """Qubits per unknown: 2B for two_sided, B+1 for offset."""
        if self.scheme == "two_sided":
            return 2 * self.bits_per_group
        return self.bits_per_group + 1

    @property
    def positive_sum(self) -> float:
        """S = sum of 2^l over the exponent range (unscaled)."""
        return sum(2.0**l for l in range(self.l_min, self.l_max + 1))

    @property
    def weights(self) -> tuple[float, ...]:
        """Per-bit weights in flat group order (unscaled)."""
        plus = tuple(2.0**l for l in range(self.l_min, self.l_max + 1))
        if self.scheme == "two_sided":
            return plus + tuple(-w for w in plus)
        return plus + (-(2.0 ** (self.l_max + 1)),)


def representable_range(config: EncodingConfig) -> tuple[float, float]:
    """(min, max) of the values one encoded unknown can take, after scaling."""
    s = config.positive_sum
    if config.scheme == "two_sided":
        lo, hi = -s, s
    else:
        lo, hi = -(2.0 ** (config.l_max + 1)), s
    return lo / config.scale_c, hi / config.scale_c


def one_sided_weights(config: EncodingConfig, sign: str) -> tuple[float, ...]:
    """Weights of a single radix-2 group (used for sign-restricted lambda)."""
    plus = tuple(2.0**l for l in range(config.l_min, config.l_max + 1))
    if sign == "positive":
        return plus
    if sign == "negative":
        return tuple(-w for w in plus)
    raise ConfigurationError(f"unknown sign restriction {sign!r}")


def scaled_config(config: EncodingConfig, c: int) -> EncodingConfig:
    """Integer-exponent config whose range covers ``c`` times the original.

    Used by the ||A(cx) - cb|| scaling trick: the returned config has
    l_min >= 0 and records ``scale_c`` multiplied by c so decoded values
    land back in the original units. ``c == 1`` returns the config
    unchanged.
    """
    if not isinstance(c, int) or c < 1:
        raise ConfigurationError(f"scaling factor must be a positive integer, got {c!r}")
    if c == 1:
        return config
    l_min = max(0, config.l_min)
    target_hi = c * config.positive_sum
    l_max = max(l_min, config.l_max)
    def _hi(lm: int) -> float:
        return sum(2.0**l for l in range(l_min, lm + 1))
    while _hi(l_max) < target_hi:
        l_max += 1
        if l_max - l_min > 256:
            raise ConfigurationError("scaled exponent range is unreasonably wide")
    if config.scheme == "offset":
        # negative bound must cover c * 2^(l_max+1) as well
        while 2.0 ** (l_max + 1) < c * 2.0 ** (config.l_max + 1):
            l_max += 1
    return EncodingConfig(
        l_min=l_min,
        l_max=l_max,
        scheme=config.scheme,
        scale_c=config.scale_c * c,
    )


@dataclass(frozen=True)
class QubitRole:
    """Logical identity of one flat qubit index.

    kind is "x", "lambda", or "aux". For encoded bits, ``sign`` is "+" or
    "-" and ``exponent`` is the power of two, with ``exponent=None``
    marking the offset scheme's single translation bit.
    """

    kind: str
    index: int = 0
    sign: Optional[str] = None
    exponent: Optional[int] = None


@dataclass(frozen=True)
class DecodedSolution:
    """Real-valued view of a sampler bitstring."""

    x: tuple[float, ...]
    eigenvalue: Optional[float] = None
    residual: Optional[float] = None

    def is_trivial(self) -> bool:
        return all(v == 0.0 for v in self.x)

    def with_residual(self, residual: float) -> "DecodedSolution":
        return DecodedSolution(x=self.x, eigenvalue=self.eigenvalue, residual=residual)


@dataclass(frozen=True)
class VariableRegistry:
    """Bijection between logical qubit roles and flat indices.

    Owns the decode semantics: given a bitstring over the full register
    (x bits, optional eigenvalue bits, optional auxiliaries) it produces
    the real solution vector and eigenvalue. Auxiliary bits are ignored
    by decoding.
    """

    n: int
    config: EncodingConfig
    lambda_config: Optional[EncodingConfig] = None
    lambda_sign: Optional[LambdaSign] = None
    num_aux: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DimensionError(f"registry needs n >= 1 unknowns, got {self.n}")
        if self.num_aux < 0:
            raise DimensionError("num_aux must be >= 0")
        if (self.lambda_config is None) != (self.lambda_sign is None):
            raise ConfigurationError(
                "lambda_config and lambda_sign must be provided together"
            )
        if self.lambda_sign is not None and self.lambda_sign not in LAMBDA_SIGNS:
            raise ConfigurationError(f"unknown lambda_sign {self.lambda_sign!r}")

    # ---- layout ------------------------------------------------------

    @property
    def group_size(self) -> int:
        return self.config.group_size

    @property
    def num_x_qubits(self) -> int:
        return self.n * self.group_size

    @property
    def lambda_weights(self) -> tuple[float, ...]:
        """Unscaled weights of the eigenvalue bits ("" when absent)."""
        if self.lambda_config is None:
            return ()
        if self.lambda_sign == "both":
            return self.lambda_config.weights
        return one_sided_weights(self.lambda_config, self.lambda_sign)

    @property
    def num_lambda_qubits(self) -> int:
        return len(self.lambda_weights)

    @property
    def total_qubits(self) -> int:
        return self.num_x_qubits + self.num_lambda_qubits + self.num_aux

    def x_weights(self) -> tuple[float, ...]:
        """Unscaled weights shared by every unknown's group."""
        return self.config.weights

    # ---- flat indices ------------------------------------------------

    def _group_offset(self, config: EncodingConfig, sign: str, exponent) -> int:
        b = config.bits_per_group
        if config.scheme == "two_sided":
            if exponent is None or not (config.l_min <= exponent <= config.l_max):
                raise IndexError(f"exponent {exponent!r} outside [{config.l_min}, {config.l_max}]")
            base = 0 if sign == "+" else b
            if sign not in ("+", "-"):
                raise IndexError(f"invalid sign {sign!r}")
            return base + (exponent - config.l_min)
        # offset scheme: positive bits then the single translation bit
        if sign == "+":
            if exponent is None or not (config.l_min <= exponent <= config.l_max):
                raise IndexError(f"exponent {exponent!r} outside [{config.l_min}, {config.l_max}]")
            return exponent - config.l_min
        if sign == "-":
            if exponent is not None:
                raise IndexError("the offset scheme has a single translation bit; pass exponent=None")
            return b
        raise IndexError(f"invalid sign {sign!r}")

    def x_index(self, i: int, sign: str, exponent: Optional[int] = None) -> int:
        """Flat index of solution bit (i, sign, exponent)."""
        if not (0 <= i < self.n):
            raise IndexError(f"unknown index {i} outside [0, {self.n})")
        return i * self.group_size + self._group_offset(self.config, sign, exponent)

    def lambda_index(self, sign: str, exponent: Optional[int] = None) -> int:
        """Flat index of an eigenvalue bit."""
        if self.lambda_config is None:
            raise IndexError("registry has no eigenvalue bits")
        cfg = self.lambda_config
        if self.lambda_sign == "both":
            off = self._group_offset(cfg, sign, exponent)
        else:
            want = "+" if self.lambda_sign == "positive" else "-"
            if sign != want:
                raise IndexError(
                    f"lambda is restricted to sign {want!r}; bit {sign!r} does not exist"
                )
            if exponent is None or not (cfg.l_min <= exponent <= cfg.l_max):
                raise IndexError(f"exponent {exponent!r} outside [{cfg.l_min}, {cfg.l_max}]")
            off = exponent - cfg.l_min
        return self.num_x_qubits + off

    def aux_index(self, t: int) -> int:
        """Flat index of auxiliary reduction variable t."""
        if not (0 <= t < self.num_aux):
            raise IndexError(f"auxiliary index {t} outside [0, {self.num_aux})")
        return self.num_x_qubits + self.num_lambda_qubits + t

    def all_roles(self) -> Iterator[QubitRole]:
        """Every role, in flat-index order."""
        cfg = self.config
        for i in range(self.n):
            for l in range(cfg.l_min, cfg.l_max + 1):
                yield QubitRole("x", i, "+", l)
            if cfg.scheme == "two_sided":
                for l in range(cfg.l_min, cfg.l_max + 1):
                    yield QubitRole("x", i, "-", l)
            else:
                yield QubitRole("x", i, "-", None)
        if self.lambda_config is not None:
            lcfg = self.lambda_config
            if self.lambda_sign in ("positive", "both"):
                for l in range(lcfg.l_min, lcfg.l_max + 1):
                    yield QubitRole("lambda", 0, "+", l)
            if self.lambda_sign == "negative":
                for l in range(lcfg.l_min, lcfg.l_max + 1):
                    yield QubitRole("lambda", 0, "-", l)
            elif self.lambda_sign == "both":
                if lcfg.scheme == "two_sided":
                    for l in range(lcfg.l_min, lcfg.l_max + 1):
                        yield QubitRole("lambda", 0, "-", l)
                else:
                    yield QubitRole("lambda", 0, "-", None)
        for t in range(self.num_aux):
            yield QubitRole("aux", t)

    # ---- decoding ----------------------------------------------------

    def decode(self, bits) -> DecodedSolution:
        """Decode a full-register bitstring to (x, eigenvalue)."""
        if len(bits) != self.total_qubits:
            raise DimensionError(
                f"bit vector has length {len(bits)}, expected {self.total_qubits}"
            )
        weights = self.x_weights()
        g = self.group_size
        c = float(self.config.scale_c)
        x = []
        for i in range(self.n):
            value = 0.0
            for k, w in enumerate(weights):
                if bits[i * g + k]:
                    value += w
            x.append(value / c)
        eigenvalue = None
        lw = self.lambda_weights
        if lw:
            base = self.num_x_qubits
            value = 0.0
            for k, w in enumerate(lw):
                if bits[base + k]:
                    value += w
            eigenvalue = value / float(self.lambda_config.scale_c)
        return DecodedSolution(x=tuple(x), eigenvalue=eigenvalue)


def flat_index(registry: VariableRegistry, role: QubitRole) -> int:
    """Flat index for a qubit role; raises IndexError for invalid roles."""
    if role.kind == "x":
        return registry.x_index(role.index, role.sign, role.exponent)
    if role.kind == "lambda":
        return registry.lambda_index(role.sign, role.exponent)
    if role.kind == "aux":
        return registry.aux_index(role.index)
    raise IndexError(f"unknown role kind {role.kind!r}")


def decode(registry: VariableRegistry, bits) -> DecodedSolution:
    """Functional alias of :meth:`VariableRegistry.decode`."""
    return registry.decode(bits)
