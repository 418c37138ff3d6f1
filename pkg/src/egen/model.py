"""Object model for eGEN adaptation policies, plus the canonical printer."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union


class Severity(enum.Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True, order=True)
class Span:
    """Source range: byte offsets plus the 1-based line/column of ``start``."""

    start: int
    end: int
    line: int = 1
    column: int = 1

    def __post_init__(self):
        if self.start > self.end:
            raise ValueError(f"span start {self.start} > end {self.end}")
        if self.line < 1 or self.column < 1:
            raise ValueError("line and column are 1-based")


NO_SPAN = Span(0, 0, 1, 1)


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    code: str
    message: str
    span: Span = NO_SPAN
    related: tuple[Span, ...] = ()

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def render(self, source_name: str = "<input>") -> str:
        return (f"{source_name}:{self.span.line}:{self.span.column}: "
                f"{self.severity.value}[{self.code}]: {self.message}")


class BatteryState(enum.Enum):
    CHARGING = "Charging"
    DISCHARGING = "Discharging"


class BatteryLevel(enum.Enum):
    HIGH = "High"
    MEDIUM = "Medium"
    LOW = "Low"


class AppState(enum.Enum):
    FOREGROUND = "Foreground"
    BACKGROUND = "Background"


class BatteryAwareFunction(enum.Enum):
    LINEAR = "Linear"
    EXPONENTIAL = "Exponential"


class ContextKey(enum.Enum):
    BATTERY_STATE = "BatteryState"
    BATTERY_LEVEL = "BatteryLevel"
    THRESHOLD_HIGH = "Threshold_High"
    THRESHOLD_MEDIUM = "Threshold_Medium"
    APP_STATE = "AppState"


class FeatureKey(enum.Enum):
    SENSING_INTERVAL = "SensingInterval"
    DECREASING_FACTOR = "Decreasing_Factor"
    BATTERY_AWARE_FUNCTION = "BatteryAwareFunction"


# Value type carried by each binding kind; ``int`` means a MYINT_T literal.
VALUE_TYPES: dict = {
    ContextKey.BATTERY_STATE: BatteryState,
    ContextKey.BATTERY_LEVEL: BatteryLevel,
    ContextKey.THRESHOLD_HIGH: int,
    ContextKey.THRESHOLD_MEDIUM: int,
    ContextKey.APP_STATE: AppState,
    FeatureKey.SENSING_INTERVAL: int,
    FeatureKey.DECREASING_FACTOR: int,
    FeatureKey.BATTERY_AWARE_FUNCTION: BatteryAwareFunction,
}

Value = Union[int, BatteryState, BatteryLevel, AppState, BatteryAwareFunction]


@dataclass(frozen=True)
class Binding:
    key: Union[ContextKey, FeatureKey]
    value: Value
    span: Span = field(default=NO_SPAN, compare=False)

    def __post_init__(self):
        expected = VALUE_TYPES[self.key]
        if not isinstance(self.value, expected) or isinstance(self.value, bool):
            raise TypeError(f"{self.key.value} expects {expected.__name__}, "
                            f"got {self.value!r}")


class _Block:
    """Ordered bindings; equality ignores order and spans."""

    bindings: tuple[Binding, ...]

    def get(self, key) -> Optional[Binding]:
        for b in self.bindings:
            if b.key is key:
                return b
        return None

    def value(self, key):
        b = self.get(key)
        return None if b is None else b.value

    @property
    def entry_order(self) -> tuple:
        return tuple(b.key for b in self.bindings)

    def _canon(self):
        return tuple(sorted((b.key.value, str(getattr(b.value, "value", b.value)))
                            for b in self.bindings))

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._canon() == other._canon()

    def __hash__(self):
        return hash(self._canon())


@dataclass(frozen=True, eq=False)
class ContextBlock(_Block):
    bindings: tuple[Binding, ...]

    @property
    def battery_state(self) -> Optional[BatteryState]:
        return self.value(ContextKey.BATTERY_STATE)

    @property
    def battery_level(self) -> Optional[BatteryLevel]:
        return self.value(ContextKey.BATTERY_LEVEL)

    @property
    def threshold_high(self) -> Optional[int]:
        return self.value(ContextKey.THRESHOLD_HIGH)

    @property
    def threshold_medium(self) -> Optional[int]:
        return self.value(ContextKey.THRESHOLD_MEDIUM)

    @property
    def app_state(self) -> Optional[AppState]:
        return self.value(ContextKey.APP_STATE)


@dataclass(frozen=True, eq=False)
class FeatureBlock(_Block):
    bindings: tuple[Binding, ...]

    @property
    def sensing_interval_ms(self) -> Optional[int]:
        return self.value(FeatureKey.SENSING_INTERVAL)

    @property
    def decreasing_factor(self) -> Optional[int]:
        return self.value(FeatureKey.DECREASING_FACTOR)

    @property
    def battery_aware_function(self) -> Optional[BatteryAwareFunction]:
        return self.value(FeatureKey.BATTERY_AWARE_FUNCTION)


@dataclass(frozen=True)
class PolicyId:
    """Numeric policy id; ``raw`` keeps the source lexeme (e.g. ``01``)."""

    value: int
    raw: str = field(default="", compare=False)

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("policy id must be non-negative")
        if not self.raw:
            object.__setattr__(self, "raw", str(self.value))
        elif int(self.raw) != self.value:
            raise ValueError(f"raw id {self.raw!r} does not denote {self.value}")

    def __int__(self):
        return self.value


@dataclass(frozen=True)
class AdaptationPolicy:
    policy_id: PolicyId
    condition: ContextBlock
    adaptation: FeatureBlock
    span: Span = field(default=NO_SPAN, compare=False)

    @property
    def triple(self):
        c = self.condition
        return (c.battery_state, c.battery_level, c.app_state)


@dataclass(frozen=True)
class PolicyModel:
    policies: tuple[AdaptationPolicy, ...] = ()
    source_name: str = field(default="<input>", compare=False)

    def __len__(self):
        return len(self.policies)

    def __iter__(self):
        return iter(self.policies)


def make_policy(policy_id, *, battery_state=BatteryState.DISCHARGING,
                battery_level=BatteryLevel.HIGH, threshold_high=80,
                threshold_medium=50, app_state=AppState.FOREGROUND,
                sensing_interval_ms=3000, decreasing_factor=10,
                function=BatteryAwareFunction.LINEAR,
                context_order: Optional[Iterable[ContextKey]] = None,
                feature_order: Optional[Iterable[FeatureKey]] = None) -> AdaptationPolicy:
    """Build a policy without going through the parser."""
    ctx = {
        ContextKey.BATTERY_STATE: battery_state,
        ContextKey.BATTERY_LEVEL: battery_level,
        ContextKey.THRESHOLD_HIGH: threshold_high,
        ContextKey.THRESHOLD_MEDIUM: threshold_medium,
        ContextKey.APP_STATE: app_state,
    }
    feat = {
        FeatureKey.SENSING_INTERVAL: sensing_interval_ms,
        FeatureKey.DECREASING_FACTOR: decreasing_factor,
        FeatureKey.BATTERY_AWARE_FUNCTION: function,
    }
    corder = list(context_order) if context_order is not None else list(ctx)
    forder = list(feature_order) if feature_order is not None else list(feat)
    if not isinstance(policy_id, PolicyId):
        policy_id = PolicyId(int(policy_id))
    return AdaptationPolicy(
        policy_id,
        ContextBlock(tuple(Binding(k, ctx[k]) for k in corder)),
        FeatureBlock(tuple(Binding(k, feat[k]) for k in forder)),
    )


def _format_value(value) -> str:
    return value.value if isinstance(value, enum.Enum) else str(value)


def pretty_print(model: PolicyModel) -> str:
    """Emit canonical ``.egen`` text; bindings keep their recorded order."""
    chunks = []
    for policy in model.policies:
        lines = [f"AdaptationPolicy {policy.policy_id.raw} {{", "    Condition {"]
        lines += _block_lines(policy.condition.bindings)
        lines += ["    } then", "    Adaptation {"]
        lines += _block_lines(policy.adaptation.bindings)
        lines += ["    }", "}"]
        chunks.append("\n".join(lines) + "\n")
    return "\n".join(chunks)


def _block_lines(bindings) -> list[str]:
    out = []
    for i, b in enumerate(bindings):
        suffix = " AND" if i < len(bindings) - 1 else ""
        out.append(f"        {b.key.value} = {_format_value(b.value)}{suffix}")
    return out
