"""Seeded sample sources with exact distribution facts.

Every source is a deterministic stream: the same (distribution, seed,
replicate index) always yields the same draw sequence, and distinct
replicate indices yield statistically independent streams derived from the
same base seed.  Draws come from numpy's PCG64 generator; the algorithm
name is exposed so experiment reports can record it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

RNG_ALGORITHM = "pcg64"

__all__ = [
    "RNG_ALGORITHM",
    "InsufficientSamplesError",
    "SourceFacts",
    "Constant",
    "Normal",
    "LogNormal",
    "ScaledBernoulli",
    "ParetoShape",
    "Recorded",
    "Scaled",
    "SampleSource",
    "parse_distribution",
    "load_recorded",
]


class InsufficientSamplesError(RuntimeError):
    """A finite (recorded) source was asked for more draws than it holds."""


@dataclass(frozen=True)
class SourceFacts:
    """Exact mean, relative variance, and an honest bound c with c^2 >= relvar."""

    true_mean: float
    true_relvar: float
    c_bound: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.true_mean) and self.true_mean > 0.0):
            raise ValueError("facts require a finite positive mean")
        if self.true_relvar < 0.0 or not math.isfinite(self.true_relvar):
            raise ValueError("relative variance must be finite and nonnegative")
        # allow a one-ulp sqrt round-trip when c_bound = sqrt(relvar)
        if self.c_bound * self.c_bound < self.true_relvar * (1.0 - 1e-12):
            raise ValueError("c_bound^2 must cover the relative variance")


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not (math.isfinite(value) and value > 0.0):
        raise ValueError(f"{name} must be positive and finite, got {value!r}")
    return value


@dataclass(frozen=True)
class Constant:
    """Degenerate stream: every draw equals `value`."""

    value: float

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return np.full(n, float(self.value))

    def facts(self) -> SourceFacts:
        return SourceFacts(_positive("constant value", self.value), 0.0, 0.0)

    @property
    def spec_string(self) -> str:
        return f"constant:{self.value:g}"


@dataclass(frozen=True)
class Normal:
    mu: float
    sigma: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.mu) and math.isfinite(self.sigma) and self.sigma >= 0.0):
            raise ValueError("Normal requires finite mu and sigma >= 0")

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.normal(self.mu, self.sigma, n)

    def facts(self) -> SourceFacts:
        mean = _positive("Normal mean", self.mu)
        relvar = (self.sigma / mean) ** 2
        return SourceFacts(mean, relvar, self.sigma / mean)

    @property
    def spec_string(self) -> str:
        return f"normal:{self.mu:g},{self.sigma:g}"


@dataclass(frozen=True)
class LogNormal:
    """exp(s * Z) with Z standard normal; relative variance expm1(s^2)."""

    s: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.s) and self.s >= 0.0):
            raise ValueError("LogNormal requires s >= 0")

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.lognormal(0.0, self.s, n)

    def facts(self) -> SourceFacts:
        relvar = math.expm1(self.s * self.s)
        return SourceFacts(math.exp(0.5 * self.s * self.s), relvar, math.sqrt(relvar))

    @property
    def spec_string(self) -> str:
        return f"lognormal:{self.s:g}"


@dataclass(frozen=True)
class ScaledBernoulli:
    """`scale` with probability p, else 0; relative variance (1-p)/p."""

    p: float
    scale: float = 1.0

    def __post_init__(self) -> None:
        if not (0.0 < self.p <= 1.0):
            raise ValueError("Bernoulli probability must lie in (0, 1]")
        _positive("Bernoulli scale", self.scale)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return self.scale * (rng.random(n) < self.p).astype(float)

    def facts(self) -> SourceFacts:
        relvar = (1.0 - self.p) / self.p
        return SourceFacts(self.p * self.scale, relvar, math.sqrt(relvar))

    @property
    def spec_string(self) -> str:
        return f"bernoulli:{self.p:g},{self.scale:g}"


@dataclass(frozen=True)
class ParetoShape:
    """Pareto with minimum 1 and shape a: P(X > x) = x^(-a) for x >= 1.

    Third and higher moments are infinite for a <= 3; facts() needs a > 2 so
    the variance exists.
    """

    a: float

    def __post_init__(self) -> None:
        _positive("Pareto shape", self.a)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return 1.0 + rng.pareto(self.a, n)

    def facts(self) -> SourceFacts:
        if self.a <= 2.0:
            raise ValueError("Pareto shape must exceed 2 for a finite variance")
        mean = self.a / (self.a - 1.0)
        var = self.a / ((self.a - 1.0) ** 2 * (self.a - 2.0))
        relvar = var / (mean * mean)
        return SourceFacts(mean, relvar, math.sqrt(relvar))

    @property
    def spec_string(self) -> str:
        return f"pareto:{self.a:g}"


@dataclass(frozen=True)
class Recorded:
    """Fixed finite sequence, replayed in order; exhausting it is an error.

    Facts are the population mean and relative variance of the sequence.
    Replicate indices do not apply: every stream replays the same values.
    """

    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.values) == 0:
            raise ValueError("recorded sequence must be non-empty")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not all(math.isfinite(v) for v in self.values):
            raise ValueError("recorded values must be finite")

    def facts(self) -> SourceFacts:
        arr = np.asarray(self.values)
        mean = _positive("recorded mean", float(arr.mean()))
        relvar = float(arr.var()) / (mean * mean)
        return SourceFacts(mean, relvar, math.sqrt(relvar))

    @property
    def spec_string(self) -> str:
        return f"recorded:{len(self.values)}values"


@dataclass(frozen=True)
class Scaled:
    """Every draw of `inner` multiplied by a positive factor.

    Relative variance is unchanged, which is exactly why the estimator's
    guarantee is scale-free.
    """

    inner: object
    factor: float

    def __post_init__(self) -> None:
        _positive("scale factor", self.factor)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return self.factor * self.inner.sample(rng, n)

    def facts(self) -> SourceFacts:
        inner = self.inner.facts()
        return SourceFacts(self.factor * inner.true_mean, inner.true_relvar, inner.c_bound)

    @property
    def spec_string(self) -> str:
        return f"scaled:{self.factor:g}:{self.inner.spec_string}"


class SampleSource:
    """Deterministic stream of iid draws from one distribution.

    ``take(n)`` returns the next n draws and advances the stream;
    ``sibling(i)`` opens the independent stream for replicate i of the same
    base seed.  A source instance is single-consumer.
    """

    algorithm = RNG_ALGORITHM

    def __init__(self, dist, seed: int, replicate_index: int = 0):
        self.dist = dist
        self.seed = int(seed)
        self.replicate_index = int(replicate_index)
        sequence = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.replicate_index,))
        self._rng = np.random.Generator(np.random.PCG64(sequence))
        self._position = 0

    def take(self, n: int) -> np.ndarray:
        if n < 0:
            raise ValueError("draw count must be nonnegative")
        n = int(n)
        if isinstance(self.dist, Recorded):
            end = self._position + n
            if end > len(self.dist.values):
                raise InsufficientSamplesError(
                    f"recorded source holds {len(self.dist.values)} values, "
                    f"needed {end}"
                )
            out = np.asarray(self.dist.values[self._position : end], dtype=float)
            self._position = end
            return out
        return self.dist.sample(self._rng, n)

    def next(self) -> float:
        return float(self.take(1)[0])

    def sibling(self, replicate_index: int) -> "SampleSource":
        return SampleSource(self.dist, self.seed, replicate_index)

    def facts(self) -> SourceFacts:
        return self.dist.facts()


def load_recorded(path) -> Recorded:
    """Read a recorded source from a plain-text file, one decimal value per line."""
    values = []
    with open(path, "r", encoding="ascii") as fh:
        for line_no, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                values.append(float(text))
            except ValueError:
                raise ValueError(f"{path}: line {line_no} is not a decimal value: {text!r}") from None
    return Recorded(tuple(values))


def parse_distribution(text: str):
    """Parse the `name:param,param` mini-syntax used by the CLI and reports.

    Recognised forms: constant:v, normal:mu,sigma, lognormal:s,
    bernoulli:p[,scale], pareto:a, recorded:PATH.
    """
    name, _, rest = text.partition(":")
    name = name.strip().lower()
    if name == "recorded":
        if not rest:
            raise ValueError("recorded distribution needs a file path")
        return load_recorded(rest)
    try:
        params = [float(p) for p in rest.split(",")] if rest else []
    except ValueError:
        raise ValueError(f"bad numeric parameters in distribution {text!r}") from None
    if name == "constant" and len(params) == 1:
        return Constant(params[0])
    if name == "normal" and len(params) == 2:
        return Normal(params[0], params[1])
    if name == "lognormal" and len(params) == 1:
        return LogNormal(params[0])
    if name == "bernoulli" and len(params) in (1, 2):
        return ScaledBernoulli(*params)
    if name == "pareto" and len(params) == 1:
        return ParetoShape(params[0])
    raise ValueError(
        f"unknown distribution {text!r}; expected constant:v, normal:mu,sigma, "
        "lognormal:s, bernoulli:p[,scale], pareto:a, or recorded:PATH"
    )
