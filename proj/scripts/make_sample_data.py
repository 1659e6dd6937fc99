#!/usr/bin/env python3
"""Regenerate data/weather.csv and data/load.csv.

Thirty days of synthetic hourly records for the README walkthrough: a
clear-sky irradiance curve with day-level cloudiness and hour-level forecast
error, and a two-peak residential load profile with weekend scaling. Fixed
seed; reruns reproduce the checked-in files byte for byte.
"""

import math
import random
from pathlib import Path

DAYS = 30
SEED = 20240601
ROOT = Path(__file__).resolve().parent.parent


def clear_sky(hour: int) -> float:
    if hour < 6 or hour > 18:
        return 0.0
    return 900.0 * math.sin(math.pi * (hour - 6) / 12.0)


def load_base(hour: int) -> float:
    profile = [
        0.9, 0.8, 0.7, 0.7, 0.7, 0.8, 1.1, 1.4, 1.2, 1.0, 0.9, 0.9,
        1.0, 1.0, 0.9, 0.9, 1.2, 1.6, 1.9, 2.0, 1.8, 1.5, 1.2, 1.0,
    ]
    return profile[hour]


def main() -> None:
    rng = random.Random(SEED)

    weather_rows = ["timestamp_epoch_s,measured_wm2,forecast_wm2,horizon_h"]
    load_rows = ["timestamp_epoch_s,load_kw"]

    for day in range(DAYS):
        cloudiness = rng.uniform(0.45, 1.0)
        weekend = day % 7 in (5, 6)
        for hour in range(24):
            ts = (day * 24 + hour) * 3600
            forecast = round(clear_sky(hour) * cloudiness, 1)
            noise = rng.uniform(-0.18, 0.18)
            measured = round(max(0.0, forecast * (1.0 + noise)), 1)
            # A couple of sensor dropouts per month keep the ingest path honest.
            if rng.random() < 0.02:
                weather_rows.append(f"{ts},,{forecast},24")
            else:
                weather_rows.append(f"{ts},{measured},{forecast},24")

            scale = 1.15 if weekend else 1.0
            load = round(load_base(hour) * scale * rng.uniform(0.85, 1.15), 3)
            load_rows.append(f"{ts},{load}")

    (ROOT / "data" / "weather.csv").write_text("\n".join(weather_rows) + "\n")
    (ROOT / "data" / "load.csv").write_text("\n".join(load_rows) + "\n")
    print(f"wrote {len(weather_rows) - 1} weather rows, {len(load_rows) - 1} load rows")


if __name__ == "__main__":
    main()
