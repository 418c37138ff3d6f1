"""Semantic checks on parsed policy models.

Codes:
    V001 duplicate policy id                      (error)
    V002 binding kind repeated within a block     (error)
    V003 Threshold_Medium >= Threshold_High       (error)
    V004 threshold outside 1..99                  (error)
    V005 SensingInterval = 0                      (error)
    V006 two policies share a context triple      (warning)
    V007 thresholds differ between policies       (warning)
"""
from __future__ import annotations

from .model import (ContextKey, Diagnostic, FeatureKey, PolicyModel, Severity)

THRESHOLD_RANGE = range(1, 100)


def _err(code, message, span, related=()):
    return Diagnostic(Severity.ERROR, code, message, span, tuple(related))


def _warn(code, message, span, related=()):
    return Diagnostic(Severity.WARNING, code, message, span, tuple(related))


def validate(model: PolicyModel) -> list[Diagnostic]:
    """Return every violation in ``model``, sorted by (span start, code)."""
    diags: list[Diagnostic] = []
    seen_ids: dict = {}
    seen_triples: dict = {}
    first_thresholds = None

    for policy in model.policies:
        pid = policy.policy_id.value
        if pid in seen_ids:
            first = seen_ids[pid]
            diags.append(_err("V001", f"duplicate policy id {pid} (first declared at "
                                      f"line {first.span.line})",
                              policy.span, [first.span]))
        else:
            seen_ids[pid] = policy

        for block in (policy.condition, policy.adaptation):
            seen_keys: dict = {}
            for b in block.bindings:
                if b.key in seen_keys:
                    diags.append(_err("V002", f"{b.key.value} is repeated in the same block",
                                      b.span, [seen_keys[b.key].span]))
                else:
                    seen_keys[b.key] = b

        cond = policy.condition
        high = cond.get(ContextKey.THRESHOLD_HIGH)
        medium = cond.get(ContextKey.THRESHOLD_MEDIUM)
        for b in (high, medium):
            if b is not None and b.value not in THRESHOLD_RANGE:
                diags.append(_err("V004", f"{b.key.value} = {b.value} is outside 1..99", b.span))
        if high is not None and medium is not None and medium.value >= high.value:
            diags.append(_err("V003", f"Threshold_Medium ({medium.value}) must be below "
                                      f"Threshold_High ({high.value})",
                              medium.span, [high.span]))

        interval = policy.adaptation.get(FeatureKey.SENSING_INTERVAL)
        if interval is not None and interval.value == 0:
            diags.append(_err("V005", "SensingInterval must be at least 1 ms", interval.span))

        triple = policy.triple
        if None not in triple:
            if triple in seen_triples:
                other = seen_triples[triple]
                label = ", ".join(v.value for v in triple)
                diags.append(_warn("V006", f"policy {pid} overlaps policy "
                                           f"{other.policy_id.value} ({label}); "
                                           f"the earlier one wins",
                                   policy.span, [other.span]))
            else:
                seen_triples[triple] = policy

        if high is not None and medium is not None:
            pair = (high.value, medium.value)
            if first_thresholds is None:
                first_thresholds = (pair, policy)
            elif pair != first_thresholds[0]:
                ref_pair, ref = first_thresholds
                diags.append(_warn("V007", f"thresholds {pair[0]}/{pair[1]} differ from "
                                           f"{ref_pair[0]}/{ref_pair[1]} declared by policy "
                                           f"{ref.policy_id.value}",
                                   high.span, [ref.span]))

    diags.sort(key=lambda d: (d.span.start, d.code))
    return diags


def has_errors(diags) -> bool:
    return any(d.is_error for d in diags)
