"""Sampled paths, deterministic Holder test functions, and seminorm estimation."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "SampledPath",
    "HolderReport",
    "WeierstrassFunction",
    "make_weierstrass",
    "sample_function",
    "holder_seminorm_path",
    "path_diff",
    "sup_norm",
    "make_function",
    "read_path_csv",
    "write_path_csv",
]

PathLike = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class SampledPath:
    """A one-variable function given by sorted samples.

    Evaluation interpolates linearly (or by nearest sample) between stamps and
    raises outside [ts[0], ts[-1]].  Instances are immutable and safe to share
    across threads.
    """

    ts: np.ndarray
    values: np.ndarray
    interpolation: str = "linear"

    def __post_init__(self) -> None:
        ts = np.asarray(self.ts, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "ts", ts)
        object.__setattr__(self, "values", vals)
        if ts.ndim != 1 or ts.size < 2:
            raise ValueError("need at least two sample times")
        if vals.shape != ts.shape:
            raise ValueError("ts and values must have matching shapes")
        if not np.all(np.diff(ts) > 0):
            raise ValueError("sample times must be strictly increasing")
        if not (np.all(np.isfinite(ts)) and np.all(np.isfinite(vals))):
            raise ValueError("samples must be finite")
        if self.interpolation not in ("linear", "nearest"):
            raise ValueError("interpolation must be 'linear' or 'nearest'")
        ts.flags.writeable = False
        vals.flags.writeable = False

    @property
    def domain(self) -> tuple[float, float]:
        return float(self.ts[0]), float(self.ts[-1])

    def _check_domain(self, t: np.ndarray) -> None:
        lo, hi = self.domain
        tmin, tmax = np.min(t), np.max(t)
        # tolerate roundoff-level excursions from quadrature node arithmetic
        slack = 1e-12 * max(abs(lo), abs(hi), 1.0)
        if tmin < lo - slack or tmax > hi + slack:
            raise ValueError(
                f"evaluation at t in [{tmin:g}, {tmax:g}] outside domain [{lo:g}, {hi:g}]"
            )

    def __call__(self, t):
        arr = np.asarray(t, dtype=float)
        self._check_domain(arr)
        if self.interpolation == "nearest":
            idx = np.searchsorted(self.ts, arr)
            idx = np.clip(idx, 1, self.ts.size - 1)
            left = arr - self.ts[idx - 1] <= self.ts[idx] - arr
            idx = np.where(left, idx - 1, idx)
            out = self.values[idx]
        else:
            out = np.interp(arr, self.ts, self.values)
        return out if np.ndim(t) else float(out)

    def diff(self, t, s):
        """values(t) - values(s) with the common interpolation terms cancelled.

        Within one linear segment the result is slope * (t - s) exactly, which
        preserves the smallness of nearby differences better than subtracting
        two interpolated values.
        """
        ta = np.asarray(t, dtype=float)
        sa = np.asarray(s, dtype=float)
        self._check_domain(ta)
        self._check_domain(sa)
        if self.interpolation == "nearest":
            return self(t) - self(s)
        i = np.clip(np.searchsorted(self.ts, ta, side="right") - 1, 0, self.ts.size - 2)
        j = np.clip(np.searchsorted(self.ts, sa, side="right") - 1, 0, self.ts.size - 2)
        dt_nodes = np.diff(self.ts)
        slopes = np.diff(self.values) / dt_nodes
        same = i == j
        local = slopes[i] * (ta - sa)
        split = (
            (self.values[i] - self.values[j])
            + slopes[i] * (ta - self.ts[i])
            - slopes[j] * (sa - self.ts[j])
        )
        out = np.where(same, local, split)
        return out if (np.ndim(t) or np.ndim(s)) else float(out)

    def restricted(self, a: float, b: float) -> "SampledPath":
        """Samples inside [a, b], with interpolated endpoint values added."""
        lo, hi = self.domain
        if a < lo - 1e-12 or b > hi + 1e-12 or a >= b:
            raise ValueError(f"[{a}, {b}] not covered by path domain [{lo}, {hi}]")
        mask = (self.ts > a) & (self.ts < b)
        ts = np.concatenate([[a], self.ts[mask], [b]])
        vals = np.concatenate([[self(a)], self.values[mask], [self(b)]])
        keep = np.concatenate([[True], np.diff(ts) > 0])
        return SampledPath(ts[keep], vals[keep], self.interpolation)


@dataclass(frozen=True)
class HolderReport:
    """Estimated Holder seminorm: a sup over finitely many probed pairs."""

    seminorm: float
    exponent: float
    arg_pair: tuple[float, float]
    n_pairs_checked: int


class WeierstrassFunction:
    """f(t) = sum_k base^(-k H) cos(base^k t + phase_k), H-Holder on compacts.

    With finitely many scales the function is smooth below base^(-scales), so
    every quantity the package computes from it is resolvable in floats.
    Identical constructor arguments give bitwise-identical values.
    """

    def __init__(
        self,
        H: float,
        scales: int,
        base: float = 2.0,
        phases: Sequence[float] | None = None,
    ) -> None:
        if not 0.0 < H < 1.0:
            raise ValueError("H must lie in (0, 1)")
        if base < 2.0:
            raise ValueError("base must be >= 2")
        if scales < 1:
            raise ValueError("scales must be >= 1")
        self.H = float(H)
        self.scales = int(scales)
        self.base = float(base)
        if phases is None:
            phases = [0.0] * scales
        if len(phases) != scales:
            raise ValueError("need one phase per scale")
        self.phases = tuple(float(p) for p in phases)
        self._amps = self.base ** (-self.H * np.arange(self.scales))
        self._freqs = self.base ** np.arange(self.scales)

    def __call__(self, t):
        arr = np.asarray(t, dtype=float)
        out = np.zeros_like(arr)
        for a, w, p in zip(self._amps, self._freqs, self.phases):
            out += a * np.cos(w * arr + p)
        return out if np.ndim(t) else float(out)

    @property
    def descriptor(self) -> str:
        desc = f"weierstrass:H={self.H:g},scales={self.scales},base={self.base:g}"
        if any(p != 0.0 for p in self.phases):
            desc += ",phases=" + "|".join(f"{p:g}" for p in self.phases)
        return desc


def make_weierstrass(
    H: float,
    scales: int,
    base: float = 2.0,
    phases: Sequence[float] | None = None,
) -> WeierstrassFunction:
    """Deterministic H-Holder test function (cosine series, see class doc)."""
    return WeierstrassFunction(H, scales, base, phases)


def sample_function(f: PathLike, a: float, b: float, n: int) -> SampledPath:
    """Sample a callable on n+1 uniform points of [a, b]."""
    ts = np.linspace(a, b, n + 1)
    return SampledPath(ts, np.asarray(f(ts), dtype=float))


def path_diff(f, t, s):
    """f(t) - f(s), routed through f.diff when available (SampledPath)."""
    if hasattr(f, "diff"):
        return f.diff(t, s)
    return f(t) - f(s)


def sup_norm(f, a: float, b: float, n: int = 2048) -> float:
    """Sup of |f| on [a, b], probed on a uniform grid."""
    ts = np.linspace(a, b, n + 1)
    return float(np.max(np.abs(f(ts))))


# ---------------------------------------------------------------------------
# Holder seminorm estimation


_ALL_PAIRS_LIMIT = 2048
_DENSE_LAGS = 64


def _probe_times(p: SampledPath, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    r = p.restricted(a, b)
    return r.ts, r.values


def _pair_schedule(n: int) -> list[int]:
    """Deterministic lag schedule: every small lag, then geometric spacing."""
    lags = list(range(1, min(_DENSE_LAGS, n - 1) + 1))
    lag = _DENSE_LAGS
    while lag < n - 1:
        lag = int(math.ceil(lag * 1.5))
        if lag >= n:
            break
        lags.append(lag)
    return lags


def holder_seminorm_path(
    p: SampledPath, exponent: float, a: float, b: float
) -> HolderReport:
    """Estimated gamma-Holder seminorm of a path over [a, b].

    The estimate is sup |p(t) - p(s)| / (t - s)^exponent over probed sample
    pairs: all pairs when at most 2048 samples fall in the window, otherwise
    a fixed stride schedule (every lag up to 64, then geometrically spaced
    lags).  It is a lower bound of the true seminorm by construction and is
    deterministic for fixed inputs.
    """
    if not 0.0 < exponent <= 1.0:
        raise ValueError("exponent must lie in (0, 1]")
    ts, vals = _probe_times(p, a, b)
    n = ts.size
    if n < 2:
        raise ValueError("need at least two samples in [a, b]")

    best = -1.0
    best_pair = (float(ts[0]), float(ts[-1]))
    n_pairs = 0
    if n <= _ALL_PAIRS_LIMIT:
        for k in range(n - 1):
            dtk = ts[k + 1 :] - ts[k]
            ratios = np.abs(vals[k + 1 :] - vals[k]) / dtk**exponent
            n_pairs += ratios.size
            m = int(np.argmax(ratios))
            if ratios[m] > best:
                best = float(ratios[m])
                best_pair = (float(ts[k]), float(ts[k + 1 + m]))
    else:
        for lag in _pair_schedule(n):
            dt = ts[lag:] - ts[:-lag]
            ratios = np.abs(vals[lag:] - vals[:-lag]) / dt**exponent
            n_pairs += ratios.size
            m = int(np.argmax(ratios))
            if ratios[m] > best:
                best = float(ratios[m])
                best_pair = (float(ts[m]), float(ts[m + lag]))
    return HolderReport(best, exponent, best_pair, n_pairs)


# ---------------------------------------------------------------------------
# descriptor-addressable generators


def _tag(fn, desc: str):
    fn.descriptor = desc
    return fn


def _split_top_level(text: str, sep: str = ",") -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in descriptor: {text!r}")
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise ValueError(f"unbalanced parentheses in descriptor: {text!r}")
    parts.append("".join(cur))
    return [p for p in parts if p]


def parse_descriptor(desc: str) -> tuple[str, dict[str, str]]:
    """Split 'name:k=v,k=v' into name and raw argument strings."""
    desc = desc.strip()
    if desc.startswith("(") and desc.endswith(")"):
        desc = desc[1:-1].strip()
    name, _, rest = desc.partition(":")
    args: dict[str, str] = {}
    if rest:
        for item in _split_top_level(rest):
            key, eq, val = item.partition("=")
            if not eq:
                raise ValueError(f"bad descriptor argument {item!r} in {desc!r}")
            args[key.strip()] = val.strip()
    return name.strip(), args


def make_function(desc: str) -> PathLike:
    """Build a one-variable function from a descriptor string.

    Supported: identity, const:c=..., linear:slope=...,intercept=...,
    monomial:p=..., sin[:freq=,phase=], cos[:freq=,phase=], sqrt,
    weierstrass:H=...,scales=...[,base=...][,phases=p0|p1|...].
    """
    name, args = parse_descriptor(desc)
    if name == "identity":
        return _tag(lambda t: np.asarray(t, dtype=float) + 0.0, "identity")
    if name == "const":
        c = float(args.get("c", "1"))
        return _tag(lambda t: np.full_like(np.asarray(t, dtype=float), c), desc)
    if name == "linear":
        m = float(args.get("slope", "1"))
        c = float(args.get("intercept", "0"))
        return _tag(lambda t: m * np.asarray(t, dtype=float) + c, desc)
    if name == "monomial":
        p = float(args["p"])
        return _tag(lambda t: np.asarray(t, dtype=float) ** p, desc)
    if name == "sin":
        w = float(args.get("freq", "1"))
        ph = float(args.get("phase", "0"))
        return _tag(lambda t: np.sin(w * np.asarray(t, dtype=float) + ph), desc)
    if name == "cos":
        w = float(args.get("freq", "1"))
        ph = float(args.get("phase", "0"))
        return _tag(lambda t: np.cos(w * np.asarray(t, dtype=float) + ph), desc)
    if name == "sqrt":
        return _tag(lambda t: np.sqrt(np.asarray(t, dtype=float)), "sqrt")
    if name == "weierstrass":
        phases = None
        if "phases" in args:
            phases = [float(x) for x in args["phases"].split("|")]
        return make_weierstrass(
            H=float(args["H"]),
            scales=int(args["scales"]),
            base=float(args.get("base", "2")),
            phases=phases,
        )
    raise ValueError(f"unknown function descriptor {desc!r}")


# ---------------------------------------------------------------------------
# CSV format: header "t,value", '.' decimal, rows sorted by t


def read_path_csv(path) -> SampledPath:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if [h.strip() for h in header] != ["t", "value"]:
            raise ValueError(f"expected header 't,value' in {path}, got {header}")
        rows = [(float(r[0]), float(r[1])) for r in reader if r]
    ts = np.array([r[0] for r in rows])
    vals = np.array([r[1] for r in rows])
    return SampledPath(ts, vals)


def write_path_csv(path, p: SampledPath) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "value"])
        for t, v in zip(p.ts, p.values):
            writer.writerow([repr(float(t)), repr(float(v))])
