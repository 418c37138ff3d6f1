"""Model-to-text generation of the battery-aware Android sources.

Four Java files come out of one policy model:

* ``AdaptationUtility.java`` - one guarded branch per policy, carrying the
  thresholds, base interval, factor and growth law as literals.
* ``BatteryAware.java`` - activity base class that reads battery/lifecycle
  context and re-arms location requests with the adapted interval.
* ``LocationUtility.java`` - thin wrapper over the fused location client.
* ``MainActivity.java`` - developer stub extending ``BatteryAware``.

The output is plain text; nothing here compiles or runs it.
"""
from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from string import Template

from .engine import DEFAULT_CAP_MS, DEFAULT_FALLBACK_MS, band_entry_level, interval_table
from .model import AppState, BatteryState, PolicyModel

PACKAGE_RE = re.compile(r"[a-z][a-z0-9_]*(\.[a-z][a-z0-9_]*)*\Z")

FILE_ORDER = ("MainActivity", "LocationUtility", "BatteryAware", "AdaptationUtility")


class CodegenError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


@dataclass(frozen=True)
class GenOptions:
    package_name: str = "com.example.app"
    fallback_ms: int = DEFAULT_FALLBACK_MS
    cap_ms: int = DEFAULT_CAP_MS

    def __post_init__(self):
        if self.fallback_ms < 1 or self.cap_ms < 1:
            raise ValueError("fallback_ms and cap_ms must be positive")


def checksum64(text: str) -> int:
    return int.from_bytes(hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest(), "big")


@dataclass(frozen=True)
class GeneratedFile:
    relative_path: str
    contents: str
    checksum: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "checksum", checksum64(self.contents))


_HEADER = Template("""\
// Generated by egen from ${source}. Changes are overwritten on regeneration.
package ${package};
""")

_ADAPTATION_UTILITY = Template("""\
${header}
import java.math.BigInteger;

/**
 * Alters the location-sensing interval based on the battery and app context.
 * One branch per adaptation policy, in declaration order; the first match wins.
 */
public final class AdaptationUtility {

    public static final long FALLBACK_MS = ${fallback}L;
    public static final long CAP_MS = ${cap}L;

    public enum Level { HIGH, MEDIUM, LOW }

    public enum Function { LINEAR, EXPONENTIAL }

    private AdaptationUtility() {
    }

    public static Level classify(int percent, int thresholdHigh, int thresholdMedium) {
        if (percent >= thresholdHigh) {
            return Level.HIGH;
        }
        if (percent >= thresholdMedium) {
            return Level.MEDIUM;
        }
        return Level.LOW;
    }

    public static long computeInterval(int percent, boolean charging, boolean foreground) {
${branches}        return Math.min(FALLBACK_MS, CAP_MS);
    }

    static long grow(long baseMs, long factor, int drops, Function function) {
        if (function == Function.LINEAR) {
            return Math.min(baseMs + factor * drops, CAP_MS);
        }
        BigInteger two = BigInteger.valueOf(2);
        BigInteger den = BigInteger.valueOf(100).pow(drops);
        BigInteger num = BigInteger.valueOf(baseMs)
                .multiply(BigInteger.valueOf(100 + factor).pow(drops));
        BigInteger rounded = num.multiply(two).add(den).divide(den.multiply(two));
        return rounded.min(BigInteger.valueOf(CAP_MS)).longValue();
    }
}
""")

_BRANCH = Template("""\
        // AdaptationPolicy ${raw_id}: ${state}, ${level}, ${app}
        if (${charging_guard}charging && ${foreground_guard}foreground
                && classify(percent, ${high}, ${medium}) == Level.${level_const}) {
            return grow(${base}, ${factor}, ${entry} - percent, Function.${function});
        }
""")

_BATTERY_AWARE = Template("""\
${header}
import android.content.Context;
import android.location.Location;
import android.os.BatteryManager;
import android.os.Bundle;

import androidx.appcompat.app.AppCompatActivity;

/**
 * Activity base that does the adaptive location-sensing: every update
 * re-reads the battery context and re-arms the request with a new interval.
 */
public abstract class BatteryAware extends AppCompatActivity
        implements LocationUtility.Listener {

    private LocationUtility locationUtility;
    private BatteryManager batteryManager;
    private boolean foreground;
    private long currentIntervalMs = -1L;

    @Override
    protected void onCreate(Bundle savedInstanceState) {
        super.onCreate(savedInstanceState);
        batteryManager = (BatteryManager) getSystemService(Context.BATTERY_SERVICE);
        locationUtility = new LocationUtility(this, this);
    }

    @Override
    protected void onStart() {
        super.onStart();
        foreground = true;
        rearm();
    }

    @Override
    protected void onResume() {
        super.onResume();
        foreground = true;
        rearm();
    }

    @Override
    protected void onPause() {
        super.onPause();
        foreground = false;
        rearm();
    }

    @Override
    protected void onDestroy() {
        locationUtility.stop();
        super.onDestroy();
    }

    protected int batteryPercent() {
        return batteryManager.getIntProperty(BatteryManager.BATTERY_PROPERTY_CAPACITY);
    }

    protected boolean isCharging() {
        int status = batteryManager.getIntProperty(BatteryManager.BATTERY_PROPERTY_STATUS);
        return status == BatteryManager.BATTERY_STATUS_CHARGING
                || status == BatteryManager.BATTERY_STATUS_FULL;
    }

    protected long adaptedIntervalMs() {
        return AdaptationUtility.computeInterval(batteryPercent(), isCharging(), foreground);
    }

    private void rearm() {
        long interval = adaptedIntervalMs();
        if (interval != currentIntervalMs) {
            currentIntervalMs = interval;
            locationUtility.start(interval);
        }
    }

    @Override
    public final void onLocation(Location location) {
        onLocationUpdate(location.getLatitude(), location.getLongitude());
        rearm();
    }

    /** Extension point: receives every location fix. */
    public abstract void onLocationUpdate(double latitude, double longitude);
}
""")

_LOCATION_UTILITY = Template("""\
${header}
import android.annotation.SuppressLint;
import android.content.Context;
import android.location.Location;
import android.os.Looper;

import com.google.android.gms.location.FusedLocationProviderClient;
import com.google.android.gms.location.LocationCallback;
import com.google.android.gms.location.LocationRequest;
import com.google.android.gms.location.LocationResult;
import com.google.android.gms.location.LocationServices;

/** Fetches locations at the sensing interval chosen by AdaptationUtility. */
public class LocationUtility {

    public interface Listener {
        void onLocation(Location location);
    }

    private final FusedLocationProviderClient client;
    private final Listener listener;
    private final LocationCallback callback = new LocationCallback() {
        @Override
        public void onLocationResult(LocationResult result) {
            Location last = result.getLastLocation();
            if (last != null) {
                listener.onLocation(last);
            }
        }
    };

    public LocationUtility(Context context, Listener listener) {
        this.client = LocationServices.getFusedLocationProviderClient(context);
        this.listener = listener;
    }

    @SuppressLint("MissingPermission")
    public void start(long intervalMs) {
        client.removeLocationUpdates(callback);
        LocationRequest request = LocationRequest.create()
                .setPriority(LocationRequest.PRIORITY_HIGH_ACCURACY)
                .setInterval(intervalMs)
                .setFastestInterval(intervalMs);
        client.requestLocationUpdates(request, callback, Looper.getMainLooper());
    }

    public void stop() {
        client.removeLocationUpdates(callback);
    }
}
""")

_MAIN_ACTIVITY = Template("""\
${header}
import android.os.Bundle;

/** Application entry point; put business logic here. */
public class MainActivity extends BatteryAware {

    @Override
    protected void onCreate(Bundle savedInstanceState) {
        super.onCreate(savedInstanceState);
    }

    @Override
    public void onLocationUpdate(double latitude, double longitude) {
        // handle the new coordinates
    }
}
""")


def _branch(policy) -> str:
    c, f = policy.condition, policy.adaptation
    return _BRANCH.substitute(
        raw_id=policy.policy_id.raw,
        state=c.battery_state.value,
        level=c.battery_level.value,
        app=c.app_state.value,
        charging_guard="" if c.battery_state is BatteryState.CHARGING else "!",
        foreground_guard="" if c.app_state is AppState.FOREGROUND else "!",
        high=c.threshold_high,
        medium=c.threshold_medium,
        level_const=c.battery_level.name,
        base=f.sensing_interval_ms,
        factor=f.decreasing_factor,
        entry=band_entry_level(c.battery_level, c.threshold_high, c.threshold_medium),
        function=f.battery_aware_function.name,
    )


def generate(model: PolicyModel, opts: GenOptions = GenOptions()) -> list[GeneratedFile]:
    """Render the four Java sources for ``model``; the model must already be valid."""
    if not PACKAGE_RE.match(opts.package_name):
        raise CodegenError("EGEN-G01", f"invalid package name {opts.package_name!r}")
    if not model.policies:
        raise CodegenError("EGEN-G02", "model has no adaptation policies")
    header = _HEADER.substitute(source=model.source_name, package=opts.package_name)
    bodies = {
        "MainActivity": _MAIN_ACTIVITY.substitute(header=header),
        "LocationUtility": _LOCATION_UTILITY.substitute(header=header),
        "BatteryAware": _BATTERY_AWARE.substitute(header=header),
        "AdaptationUtility": _ADAPTATION_UTILITY.substitute(
            header=header, fallback=opts.fallback_ms, cap=opts.cap_ms,
            branches="".join(_branch(p) for p in model.policies)),
    }
    pkg_dir = opts.package_name.replace(".", "/")
    return [GeneratedFile(f"{pkg_dir}/{name}.java", bodies[name]) for name in FILE_ORDER]


def policy_table(model: PolicyModel, opts: GenOptions = GenOptions()) -> GeneratedFile:
    """Interval dump for every (charging, foreground) combination, 100% to 0%."""
    combos = [(False, True), (False, False), (True, True), (True, False)]
    columns = [interval_table(model, ch, fg, opts.fallback_ms, opts.cap_ms) for ch, fg in combos]
    names = [f"{'charging' if ch else 'discharging'}_{'foreground' if fg else 'background'}"
             for ch, fg in combos]
    lines = [",".join(["percent"] + names)]
    for i in range(101):
        lines.append(",".join([str(columns[0][i][0])] + [str(col[i][1]) for col in columns]))
    return GeneratedFile("policy_table.csv", "\n".join(lines) + "\n")

