import random

import pytest
from hypothesis import given, settings, strategies as st

from egen import parse
from egen.model import (AppState, BatteryAwareFunction, BatteryLevel, BatteryState, Severity)
from conftest import CORPUS

SINGLE_POLICY = (CORPUS / "valid" / "single_policy.egen").read_text()
CONTEXT_LINES = [l for l in SINGLE_POLICY.splitlines() if l.strip().split(" ")[0] in
                 {"BatteryState", "BatteryLevel", "Threshold_High", "Threshold_Medium", "AppState"}]


def codes(diags):
    return [d.code for d in diags]


def test_single_policy_ast(single_policy):
    assert len(single_policy.policies) == 1
    p = single_policy.policies[0]
    c, f = p.condition, p.adaptation
    assert p.policy_id.value == 1 and p.policy_id.raw == "01"
    assert c.battery_state is BatteryState.DISCHARGING
    assert c.battery_level is BatteryLevel.HIGH
    assert (c.threshold_high, c.threshold_medium) == (80, 50)
    assert c.app_state is AppState.FOREGROUND
    assert f.sensing_interval_ms == 3000
    assert f.decreasing_factor == 10
    assert f.battery_aware_function is BatteryAwareFunction.LINEAR


def _reordered(order):
    body = [l.strip().removesuffix("AND").strip() for l in CONTEXT_LINES]
    block = " AND\n        ".join(body[i] for i in order)
    start = SINGLE_POLICY.index("Condition {") + len("Condition {")
    end = SINGLE_POLICY.index("} then")
    return SINGLE_POLICY[:start] + "\n        " + block + "\n    " + SINGLE_POLICY[end:]


@pytest.mark.parametrize("seed", range(6))
def test_condition_order_independent(single_policy, seed):
    order = list(range(5))
    random.Random(seed).shuffle(order)
    model, diags = parse(_reordered(order))
    assert diags == []
    assert model == single_policy
    assert [b.key.value for b in model.policies[0].condition.bindings] == \
        [CONTEXT_LINES[i].strip().split(" ")[0] for i in order]


def test_missing_context_binding_is_e010():
    text = "\n".join(l for l in SINGLE_POLICY.splitlines() if "AppState" not in l)
    model, diags = parse(text)
    assert codes(diags) == ["E010"]
    assert model.policies == ()


def test_empty_source():
    model, diags = parse("")
    assert model.policies == () and diags == []


def test_feature_in_condition_is_e011():
    model, diags = parse(SINGLE_POLICY.replace("AppState = Foreground", "SensingInterval = 1"))
    assert codes(diags) == ["E011"]


def test_context_in_adaptation_is_e011():
    model, diags = parse(SINGLE_POLICY.replace("BatteryAwareFunction = Linear", "AppState = Background"))
    assert codes(diags) == ["E011"]


@pytest.mark.parametrize("value,ok", [("2147483647", True), ("2147483648", False)])
def test_integer_overflow_boundary(value, ok):
    model, diags = parse(SINGLE_POLICY.replace("3000", value))
    assert codes(diags) == ([] if ok else ["E012"])
    assert len(model.policies) == (1 if ok else 0)


def test_policy_id_overflow():
    _, diags = parse(SINGLE_POLICY.replace("AdaptationPolicy 01", "AdaptationPolicy 99999999999"))
    assert codes(diags) == ["E012"]


def test_unknown_word_is_e002():
    _, diags = parse(SINGLE_POLICY.replace("= Linear", "= linear"))
    assert codes(diags) == ["E002"]


def test_recovery_at_next_policy(single_policy):
    broken = SINGLE_POLICY.replace("Threshold_High = 80", "Threshold_High = High")
    second = SINGLE_POLICY.replace("01", "2")
    model, diags = parse(broken + "\n" + second)
    assert codes(diags) == ["E010"]
    assert [p.policy_id.value for p in model.policies] == [2]


def test_garbage_before_policy_recovers(single_policy):
    model, diags = parse("} } then 12\n" + SINGLE_POLICY)
    assert codes(diags) == ["E010"]
    assert model == single_policy


def test_error_message_names_expected_and_found():
    _, diags = parse("AdaptationPolicy 1 { Condition {\n  }")
    assert diags[0].message == "expected a context binding, found '}'"
    assert diags[0].severity is Severity.ERROR
    assert (diags[0].span.line, diags[0].span.column) == (2, 3)


def test_extra_context_binding_rejected():
    text = SINGLE_POLICY.replace("AppState = Foreground", "AppState = Foreground AND AppState = Background")
    _, diags = parse(text)
    assert codes(diags) == ["E010"]


def test_repeated_binding_is_not_a_parse_error():
    model, diags = parse(SINGLE_POLICY.replace("AppState = Foreground", "BatteryState = Charging"))
    assert diags == []
    assert len(model.policies[0].condition.bindings) == 5


def test_policy_span_covers_policy():
    model, _ = parse("\n\n" + SINGLE_POLICY)
    span = model.policies[0].span
    assert span.start == 2 and span.line == 3 and span.column == 1
    assert span.end == len(("\n\n" + SINGLE_POLICY).rstrip())


def test_deterministic():
    src = SINGLE_POLICY.replace("AND", "AND @", 2)
    assert parse(src) == parse(src)


@settings(max_examples=300, deadline=None)
@given(st.binary(max_size=400))
def test_fuzz_bytes_never_raise(data):
    model, diags = parse(data)
    for d in diags:
        assert 0 <= d.span.start <= d.span.end <= len(data)


TOKENS = ["AdaptationPolicy", "Condition", "then", "Adaptation", "AND", "{", "}", "=", "01",
          "80", "BatteryState", "BatteryLevel", "AppState", "Threshold_High", "Threshold_Medium",
          "SensingInterval", "Decreasing_Factor", "BatteryAwareFunction", "Discharging", "High",
          "Foreground", "Linear", "Exponential", "junk", "@", "99999999999"]


@settings(max_examples=300, deadline=None)
@given(st.lists(st.sampled_from(TOKENS), max_size=80))
def test_fuzz_token_soup_terminates(words):
    model, diags = parse(" ".join(words))
    if not diags:
        assert " ".join(words).count("AdaptationPolicy") == len(model.policies)
