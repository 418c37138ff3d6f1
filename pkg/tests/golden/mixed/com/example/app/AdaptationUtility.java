// Generated by egen from mixed.egen. Changes are overwritten on regeneration.
package com.example.app;

import java.math.BigInteger;

/**
 * Alters the location-sensing interval based on the battery and app context.
 * One branch per adaptation policy, in declaration order; the first match wins.
 */
public final class AdaptationUtility {

    public static final long FALLBACK_MS = 5000L;
    public static final long CAP_MS = 60000L;

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
        // AdaptationPolicy 1: Discharging, High, Foreground
        if (!charging && foreground
                && classify(percent, 70, 40) == Level.HIGH) {
            return grow(2000, 2, 100 - percent, Function.EXPONENTIAL);
        }
        // AdaptationPolicy 2: Discharging, Medium, Foreground
        if (!charging && foreground
                && classify(percent, 70, 40) == Level.MEDIUM) {
            return grow(4000, 50, 69 - percent, Function.LINEAR);
        }
        // AdaptationPolicy 3: Discharging, Low, Background
        if (!charging && !foreground
                && classify(percent, 70, 40) == Level.LOW) {
            return grow(10000, 5, 39 - percent, Function.EXPONENTIAL);
        }
        // AdaptationPolicy 0004: Charging, High, Foreground
        if (charging && foreground
                && classify(percent, 70, 40) == Level.HIGH) {
            return grow(1000, 0, 100 - percent, Function.LINEAR);
        }
        return Math.min(FALLBACK_MS, CAP_MS);
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
