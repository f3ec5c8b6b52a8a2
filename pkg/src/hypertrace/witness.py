"""Bijections between trace sets."""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType

from .errors import SizeMismatch
from .traces import TraceSet, restrict

__all__ = ["WitnessBijection"]


@dataclass(frozen=True)
class WitnessBijection:
    """Total bijection ``source -> target`` given by an explicit trace map."""

    source: TraceSet
    target: TraceSet
    forward: MappingProxyType

    def __post_init__(self):
        fwd = dict(self.forward)
        if set(fwd) != set(self.source.traces):
            raise SizeMismatch("witness map is not total on the source set")
        if set(fwd.values()) != set(self.target.traces) or len(set(fwd.values())) != len(fwd):
            raise SizeMismatch("witness map is not a bijection onto the target set")
        object.__setattr__(self, "forward", MappingProxyType(fwd))

    @classmethod
    def identity(cls, T: TraceSet) -> "WitnessBijection":
        return cls(T, T, {t: t for t in T.traces})

    @classmethod
    def from_labels(cls, source: TraceSet, target: TraceSet, pairs) -> "WitnessBijection":
        """Build from ``(source_label, target_label)`` pairs."""
        src, dst = source.named(), target.named()
        fwd = {}
        for a, b in pairs:
            if a not in src:
                raise KeyError(f"no trace named {a!r} in the source set")
            if b not in dst:
                raise KeyError(f"no trace named {b!r} in the target set")
            fwd[src[a]] = dst[b]
        return cls(source, target, fwd)

    def __call__(self, t):
        return self.forward[t]

    def inverse(self) -> "WitnessBijection":
        return WitnessBijection(self.target, self.source, {v: k for k, v in self.forward.items()})

    def restrict(self, var: str) -> "WitnessBijection":
        """The induced map between ``source|_var`` and ``target|_var``."""
        fwd = {}
        for t, u in self.forward.items():
            a, b = t.without(var), u.without(var)
            if fwd.setdefault(a, b) != b:
                raise SizeMismatch("restriction merges traces inconsistently")
        return WitnessBijection(restrict(self.source, var), restrict(self.target, var), fwd)

    def pairs(self):
        """``(source_label, target_label)`` in source order."""
        return [(self.source.label(t), self.target.label(self.forward[t])) for t in self.source]
